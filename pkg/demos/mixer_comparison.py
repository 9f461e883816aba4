"""Depth-3 QAOA on one random 8x8 instance with every mixer family.

Both realizations of a mixer give the same unitary (up to a global phase for
the Grover circuit), so they converge identically; only their CNOT cost
differs.
"""
import json

from setbalance import cli
from setbalance.instances import random_instance
from setbalance.mixers import MixerFamily, Realization, mixer_cnot_count


def main():
    instance = random_instance(8, 8, seed=2024)
    ground = cli.ground_state(instance)
    print(f"8x8 instance, ground state {ground:g}")
    print(f"{'mixer':<11}{'mode':<7}{'expectation':>12}{'best':>7}{'alpha':>8}{'cnots/layer':>13}")
    for family in MixerFamily:
        for mode in Realization:
            payload = json.loads(cli.run_qaoa_report(instance, family.value, mode.value, depth=3,
                                                     shots=2000, max_evals=300, seed=1))
            spec = cli.mixer_spec(family.value, mode.value, instance, 1)
            cnots = cli.cost_cnot_count(instance) + mixer_cnot_count(spec, instance.n)
            print(f"{family.value:<11}{mode.value:<7}{payload['expectation']:>12.3f}"
                  f"{payload['best_sampled']['objective']:>7g}{payload['alpha']:>8.3f}{cnots:>13}")


if __name__ == "__main__":
    main()
