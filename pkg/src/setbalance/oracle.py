"""Exhaustive ground truth and a classical single-flip local search."""
from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .exceptions import SizeError
from .problem import as_bicoloring, bitstring, decode

MAX_ENUMERATION_VARIABLES = 24
_LOW_BITS = 12


@dataclass(frozen=True)
class Spectrum:
    n: int
    min_value: float
    argmins: tuple
    histogram: dict

    @property
    def bicolorings(self):
        return [decode(x, self.n) for x in self.argmins]

    def to_dict(self, max_argmins=1024):
        shown = self.argmins[:max_argmins]
        return {
            "n": self.n,
            "min_value": self.min_value,
            "argmin_count": len(self.argmins),
            "argmins": [bitstring(x, self.n) for x in shown],
            "histogram": [{"objective": v, "count": c} for v, c in sorted(self.histogram.items())],
        }

    def to_json(self, max_argmins=1024):
        return json.dumps(self.to_dict(max_argmins), indent=2)


def _gray_block(columns, n_bits):
    """Imbalance vectors for every assignment of ``n_bits`` variables.

    Row ``x`` is ``columns @ decode(x)``; rows are filled in Gray-code order
    so each costs one column update.
    """
    out = np.empty((1 << n_bits, columns.shape[0]), dtype=columns.dtype)
    c = columns.sum(axis=1)
    out[0] = c
    prev = 0
    for i in range(1, 1 << n_bits):
        g = i ^ (i >> 1)
        k = (g ^ prev).bit_length() - 1
        # bit k 0->1 flips b_k from +1 to -1
        c = c - 2 * columns[:, k] if (g >> k) & 1 else c + 2 * columns[:, k]
        out[g] = c
        prev = g
    return out


def objective_table(instance, max_n=MAX_ENUMERATION_VARIABLES):
    """All ``2**n`` objective values via Gray-code incremental imbalance updates."""
    n = instance.n
    if n > max_n:
        raise SizeError(f"enumeration capped at {max_n} variables, instance has {n}")
    a = instance.weighted_matrix
    low = min(n, _LOW_BITS)
    high = n - low
    low_block = _gray_block(a[:, :low], low)
    high_block = _gray_block(a[:, low:], high) if high else np.zeros((1, a.shape[0]), a.dtype)
    values = np.empty(1 << n, dtype=np.int64 if not instance.is_weighted else float)
    size = 1 << low
    for h in range(1 << high):
        c = low_block + high_block[h]
        values[h * size:(h + 1) * size] = np.einsum("ij,ij->i", c, c)
    return values


def enumerate_spectrum(instance, max_n=MAX_ENUMERATION_VARIABLES):
    values = objective_table(instance, max_n)
    lo = values.min()
    argmins = tuple(int(x) for x in np.flatnonzero(values == lo))
    uniq, counts = np.unique(values, return_counts=True)
    histogram = {float(v): int(c) for v, c in zip(uniq, counts)}
    return Spectrum(instance.n, float(lo), argmins, histogram)


def local_search(instance, seed=None):
    """Best-improvement single-flip descent from a seeded random bicoloring.

    The result is 1-flip optimal: no single sign change lowers the objective.
    """
    rng = np.random.default_rng(seed)
    a = instance.weighted_matrix
    b = rng.choice(np.array([-1, 1]), size=instance.n)
    c = a @ b
    col_sq = np.einsum("ij,ij->j", a, a)
    while True:
        # change in ||c||^2 when b_k flips: -4 b_k a_k.c + 4 ||a_k||^2
        delta = -4 * b * (a.T @ c) + 4 * col_sq
        k = int(np.argmin(delta))
        if delta[k] >= 0 or np.isclose(delta[k], 0.0):
            return as_bicoloring(b)
        c = c - 2 * b[k] * a[:, k]
        b[k] = -b[k]
