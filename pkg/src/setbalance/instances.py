"""Reference instances and a random instance generator."""
import numpy as np

from .problem import SetBalancingInstance

# 15 attributes x 10 subjects; QAOA worked example, ground-state objective 11.
QAOA_EXAMPLE_MATRIX = (
    (0, 1, 0, 1, 1, 1, 1, 0, 0, 1),
    (1, 0, 1, 0, 0, 0, 0, 0, 0, 0),
    (1, 1, 0, 0, 1, 1, 1, 0, 1, 0),
    (0, 1, 0, 1, 1, 0, 1, 0, 0, 1),
    (0, 0, 1, 1, 0, 1, 0, 0, 0, 1),
    (0, 1, 1, 0, 0, 0, 1, 0, 1, 0),
    (1, 1, 1, 1, 1, 1, 1, 1, 0, 1),
    (1, 1, 0, 1, 1, 0, 0, 1, 0, 1),
    (1, 1, 0, 0, 1, 0, 1, 0, 0, 1),
    (1, 1, 0, 1, 1, 1, 0, 1, 1, 0),
    (1, 1, 0, 1, 0, 0, 0, 1, 0, 0),
    (1, 1, 0, 0, 0, 1, 1, 0, 1, 0),
    (0, 0, 0, 0, 1, 1, 0, 1, 0, 0),
    (1, 1, 0, 1, 0, 1, 0, 0, 0, 1),
    (0, 0, 0, 1, 1, 1, 0, 0, 0, 1),
)

# 10 x 10; QWOA worked example, ground-state objective 4.
QWOA_EXAMPLE_MATRIX = (
    (0, 1, 1, 1, 0, 1, 1, 0, 1, 1),
    (1, 1, 1, 0, 1, 1, 0, 1, 0, 1),
    (1, 0, 1, 1, 0, 1, 1, 1, 1, 1),
    (0, 0, 0, 0, 1, 1, 0, 1, 0, 1),
    (0, 1, 1, 1, 1, 1, 0, 0, 0, 1),
    (0, 1, 1, 1, 1, 1, 1, 0, 0, 1),
    (0, 0, 0, 1, 1, 0, 0, 0, 0, 0),
    (0, 1, 0, 1, 0, 1, 1, 1, 1, 0),
    (0, 1, 0, 0, 0, 1, 1, 0, 0, 0),
    (1, 1, 1, 0, 1, 0, 0, 0, 1, 1),
)

# A ground-state bicoloring of the QWOA example.
QWOA_EXAMPLE_SOLUTION = (-1, -1, 1, -1, 1, 1, 1, -1, 1, -1)


def qaoa_example():
    return SetBalancingInstance(np.array(QAOA_EXAMPLE_MATRIX))


def qwoa_example():
    return SetBalancingInstance(np.array(QWOA_EXAMPLE_MATRIX))


def random_instance(rows, cols, density=0.5, seed=None):
    """Each entry is independently 1 with probability ``density``."""
    if not 0.0 < density < 1.0:
        raise ValueError(f"density must lie in (0, 1), got {density}")
    rng = np.random.default_rng(seed)
    return SetBalancingInstance((rng.random((rows, cols)) < density).astype(np.int64))
