"""Row-wise Shannon entropy scores for choosing among equally good bicolorings.

A bicoloring splits the columns of ``A`` into ``A1`` (``b = +1``) and ``A2``
(``b = -1``).  Each row of a submatrix has a feature density ``p`` whose
binary entropy measures how mixed that attribute is inside the group.  Good
partitions have a large total entropy ``E`` and a small difference ``D``
between the two groups.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass

import numpy as np

from .exceptions import ValidationError
from .problem import as_bicoloring, bitstring, decode, encode, objective

SELECTORS = ("ratio", "radial", "combined")


def partition_columns(instance, b):
    """``(A1, A2)``: columns with ``b_j = +1`` and ``b_j = -1``, order kept."""
    b = as_bicoloring(b, instance.n)
    a = instance.matrix
    return a[:, b == 1], a[:, b == -1]


def binary_entropy(p):
    """``-p log2 p - (1-p) log2 (1-p)`` elementwise, with ``0 log 0 = 0``."""
    p = np.asarray(p, dtype=float)
    out = np.zeros_like(p)
    inside = (p > 0.0) & (p < 1.0)
    q = p[inside]
    out[inside] = -q * np.log2(q) - (1.0 - q) * np.log2(1.0 - q)
    return out


def row_entropy(submatrix):
    """Sum over rows of the binary entropy of each row's density of ones."""
    sub = np.asarray(submatrix)
    if sub.ndim != 2 or sub.shape[1] == 0:
        return 0.0
    p = sub.sum(axis=1) / sub.shape[1]
    return float(binary_entropy(p).sum())


@dataclass(frozen=True)
class CandidateScore:
    """Metrics of one candidate; ``ratio``, ``radial`` and ``combined`` are NaN when ``E = 0``."""

    index: int
    bicoloring: tuple
    J: float
    E: float
    D: float
    ratio: float
    radial: float
    combined: float

    def as_row(self, n):
        return {
            "index": self.index, "bitstring": bitstring(self.index, n),
            "J": self.J, "E": self.E, "D": self.D,
            "ratio": self.ratio, "radial": self.radial, "combined": self.combined,
        }


def score(instance, b):
    b = as_bicoloring(b, instance.n)
    a1, a2 = partition_columns(instance, b)
    h1, h2 = row_entropy(a1), row_entropy(a2)
    j = objective(instance, b)
    e = h1 + h2
    d = abs(h1 - h2)
    if e > 0:
        ratio = d / e
        radial = math.sqrt(j * j + d * d + (1.0 / e) ** 2)
        combined = math.sqrt(j * j + ratio * ratio)
    else:
        ratio = radial = combined = math.nan
    return CandidateScore(encode(b), tuple(int(v) for v in b), j, e, d, ratio, radial, combined)


def rank(scores, selector):
    """Candidates ordered best first; undefined scores last, ties by basis index."""
    if selector not in SELECTORS:
        raise ValidationError(f"unknown selector {selector!r}; valid options: {', '.join(SELECTORS)}")

    def key(s):
        v = getattr(s, selector)
        return (math.isnan(v), 0.0 if math.isnan(v) else v, s.index)

    return sorted(scores, key=key)


@dataclass(frozen=True)
class EntropyReport:
    n: int
    scores: tuple
    best: dict

    def ranked(self, selector):
        return rank(self.scores, selector)

    def to_csv(self, selector=None, top=None):
        """One RFC 4180 row per candidate, with a rank column per selector.

        Rows follow the ranking of ``selector`` (default ``combined``).
        """
        order = self.ranked(selector or "combined")
        if top is not None:
            order = order[:top]
        positions = {sel: {s.index: k + 1 for k, s in enumerate(self.ranked(sel))} for sel in SELECTORS}
        buf = io.StringIO()
        fields = ["index", "bitstring", "J", "E", "D", "ratio", "radial", "combined"]
        fields += [f"rank_{sel}" for sel in SELECTORS]
        writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\r\n")
        writer.writeheader()
        for s in order:
            row = s.as_row(self.n)
            row.update({f"rank_{sel}": positions[sel][s.index] for sel in SELECTORS})
            writer.writerow(row)
        return buf.getvalue()


def score_candidates(instance, candidates):
    """Score every candidate and pick the best under each selector.

    ``candidates`` holds bicolorings or basis indices; duplicates are scored
    once.  ``report.best[selector]`` is the winning basis index.
    """
    if len(candidates) == 0:
        raise ValidationError("score_candidates needs at least one candidate")
    seen, scores = set(), []
    for c in candidates:
        b = decode(int(c), instance.n) if np.ndim(c) == 0 else as_bicoloring(c, instance.n)
        s = score(instance, b)
        if s.index not in seen:
            seen.add(s.index)
            scores.append(s)
    best = {sel: rank(scores, sel)[0].index for sel in SELECTORS}
    return EntropyReport(instance.n, tuple(scores), best)
