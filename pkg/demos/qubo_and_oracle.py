"""Build the QUBO of the 15x10 example and solve it exhaustively.

Prints the leading binary-program terms and the optimal bicolorings.
"""
import numpy as np

from setbalance.instances import qaoa_example
from setbalance.oracle import enumerate_spectrum
from setbalance.problem import bitstring, build_qubo, infinity_imbalance, to_binary_program


def main():
    instance = qaoa_example()
    quadratic, linear, constant = to_binary_program(build_qubo(instance))
    print(f"constant {constant}, x0^2 coefficient {quadratic[0, 0]}, x0*x1 coefficient {quadratic[0, 1]}")
    print(f"linear terms {linear.astype(int).tolist()}")

    spectrum = enumerate_spectrum(instance)
    print(f"minimum objective {spectrum.min_value:g} reached by {len(spectrum.argmins)} bicolorings")
    for index, b in zip(spectrum.argmins, spectrum.bicolorings):
        print(f"  {bitstring(index, instance.n)}  b={b.tolist()}  max row imbalance {infinity_imbalance(instance, b)}")
    levels = sorted(spectrum.histogram.items())[:5]
    print("lowest levels:", ", ".join(f"{v:g} x{c}" for v, c in levels))
    print(f"mean over all bicolorings {np.average(list(spectrum.histogram), weights=list(spectrum.histogram.values())):.2f}")


if __name__ == "__main__":
    main()
