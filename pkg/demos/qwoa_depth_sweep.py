"""QWOA on the 10x10 example: probability of the optimum as depth grows.

Each depth is warm-started from the interpolated schedule of the previous
one.  A smaller evaluation budget than the acceptance run keeps this quick.
"""
import time

from setbalance.instances import qwoa_example
from setbalance.optimize import OptimizerConfig
from setbalance.problem import cost_diagonal
from setbalance.qwoa import WalkSpace, run_modified_qwoa, sweep_qwoa


def main():
    instance = qwoa_example()
    diag = cost_diagonal(instance)
    space = WalkSpace.full(instance.n)
    start = time.perf_counter()
    sweep = sweep_qwoa(instance, space, [0, 5, 8, 12, 16, 20], OptimizerConfig(max_evals=3000),
                       restarts=2, seed=0, diag=diag)
    for r, _, dist, _ in sweep:
        print(f"depth {r:>2}: expectation {dist.expectation:7.3f}  P(objective 4) {dist.probability_of(4):.4f}")
    print(f"sweep took {time.perf_counter() - start:.1f}s")

    result = run_modified_qwoa(instance, p_seed=1, r=5, seed=0)
    print(f"modified method: threshold {result.threshold:g}, subspace size {result.space.size}, "
          f"P(objective 4) {result.distribution.probability_of(4):.4f}")


if __name__ == "__main__":
    main()
