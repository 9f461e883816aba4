"""Rank the optimal bicolorings of a random instance by row entropy.

All candidates share the minimum objective, so the entropy metrics decide
which split keeps each attribute most mixed inside both groups.
"""
from setbalance.entropy import SELECTORS, score_candidates
from setbalance.instances import random_instance
from setbalance.oracle import enumerate_spectrum


def main():
    instance = random_instance(6, 8, seed=3)
    spectrum = enumerate_spectrum(instance)
    print(f"{len(spectrum.argmins)} bicolorings reach objective {spectrum.min_value:g}")
    report = score_candidates(instance, list(spectrum.argmins))
    print(report.to_csv(selector="combined"), end="")
    for selector in SELECTORS:
        print(f"best by {selector}: index {report.best[selector]}")


if __name__ == "__main__":
    main()
