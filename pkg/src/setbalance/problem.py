"""Set-balancing instances, bicolorings, imbalance metrics and the QUBO.

An instance is an ``m x n`` 0/1 matrix whose rows are attributes and whose
columns are subjects, optionally with a positive weight per row.  A
bicoloring ``b`` assigns every subject to one of two groups (``+1``/``-1``)
and the objective is ``||A_K b||_2^2 = b^T Q b`` with ``Q = A_K^T A_K``.

Basis index ``x`` encodes a bicoloring with bit ``k`` set meaning
``b_k = -1``; see :mod:`setbalance.statevector`.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .exceptions import ShapeError, SizeError, ValidationError
from .statevector import MAX_QUBITS

_INSTANCE_KEYS = {"m", "n", "matrix", "weights"}


@dataclass(frozen=True)
class SetBalancingInstance:
    matrix: np.ndarray
    weights: np.ndarray | None = None
    _weighted: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        a = np.array(self.matrix)
        if a.ndim != 2 or a.shape[0] < 1 or a.shape[1] < 1:
            raise ValidationError(f"matrix must be a non-empty 2-D array, got shape {a.shape}")
        if not np.isin(a, (0, 1)).all():
            raise ValidationError("matrix entries must be 0 or 1")
        a = a.astype(np.int64)
        a.flags.writeable = False
        object.__setattr__(self, "matrix", a)
        w = self.weights
        if w is not None:
            w = np.array(w, dtype=float)
            if w.shape != (a.shape[0],):
                raise ValidationError(f"expected {a.shape[0]} row weights, got shape {w.shape}")
            if not (np.isfinite(w).all() and (w > 0).all()):
                raise ValidationError("row weights must be finite and positive")
            w.flags.writeable = False
            object.__setattr__(self, "weights", w)
            weighted = a * w[:, None]
        else:
            weighted = a
        object.__setattr__(self, "_weighted", weighted)

    @property
    def m(self):
        return self.matrix.shape[0]

    @property
    def n(self):
        return self.matrix.shape[1]

    @property
    def is_weighted(self):
        return self.weights is not None

    @property
    def weighted_matrix(self):
        """``A_K``: each row scaled by its weight (integer dtype when unweighted)."""
        return self._weighted

    # -- serialization ------------------------------------------------------

    def to_dict(self):
        d = {"m": self.m, "n": self.n, "matrix": self.matrix.tolist()}
        if self.weights is not None:
            d["weights"] = self.weights.tolist()
        return d

    @classmethod
    def from_dict(cls, data):
        if not isinstance(data, dict):
            raise ValidationError("instance must be a JSON object")
        unknown = set(data) - _INSTANCE_KEYS
        if unknown:
            raise ValidationError(f"unknown instance keys: {sorted(unknown)}")
        for key in ("m", "n", "matrix"):
            if key not in data:
                raise ValidationError(f"missing instance key {key!r}")
        m, n, rows = data["m"], data["n"], data["matrix"]
        if not (_is_int(m) and _is_int(n)) or m < 1 or n < 1:
            raise ValidationError("m and n must be positive integers")
        if not isinstance(rows, list) or len(rows) != m:
            raise ValidationError(f"matrix must be a list of {m} rows")
        for i, row in enumerate(rows):
            if not isinstance(row, list) or len(row) != n:
                raise ValidationError(f"row {i} must be a list of {n} entries")
            if any(not _is_int(v) or v not in (0, 1) for v in row):
                raise ValidationError(f"row {i} has entries outside {{0, 1}}")
        weights = data.get("weights")
        if weights is not None:
            if not isinstance(weights, list) or any(
                isinstance(w, bool) or not isinstance(w, (int, float)) for w in weights
            ):
                raise ValidationError("weights must be a list of numbers")
        return cls(np.array(rows, dtype=np.int64).reshape(m, n), weights)

    def to_json(self):
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))

    def save(self, path):
        Path(path).write_text(self.to_json() + "\n")

    @classmethod
    def load(cls, path):
        return cls.from_json(Path(path).read_text())


def _is_int(v):
    return isinstance(v, int) and not isinstance(v, bool)


# ---------------------------------------------------------------------------
# bicolorings


def as_bicoloring(b, n=None):
    b = np.asarray(b)
    if b.ndim != 1:
        raise ShapeError("bicoloring must be one-dimensional")
    if n is not None and len(b) != n:
        raise ShapeError(f"bicoloring of length {len(b)} for {n} subjects")
    if not np.isin(b, (-1, 1)).all():
        raise ValidationError("bicoloring entries must be exactly +1 or -1")
    return b.astype(np.int64)


def encode(b):
    """Basis index of a bicoloring (bit k set iff ``b[k] == -1``)."""
    b = as_bicoloring(b)
    return int(sum(1 << k for k, v in enumerate(b) if v == -1))


def decode(index, n):
    """Bicoloring held by basis index ``index`` on ``n`` variables."""
    if not 0 <= index < (1 << n):
        raise ShapeError(f"index {index} outside [0, 2**{n})")
    bits = (index >> np.arange(n)) & 1
    return (1 - 2 * bits).astype(np.int64)


def bitstring(index, n):
    """Text form, most significant variable first (``b_{n-1} ... b_0``)."""
    return format(index, f"0{n}b")


def spin_table(n):
    """``2**n x n`` matrix whose row ``x`` is ``decode(x, n)``."""
    idx = np.arange(1 << n)
    return (1 - 2 * ((idx[:, None] >> np.arange(n)) & 1)).astype(np.int8)


# ---------------------------------------------------------------------------
# metrics


def imbalance(instance, b):
    """Signed per-row imbalance ``c = A_K b``."""
    b = as_bicoloring(b, instance.n)
    return instance.weighted_matrix @ b


def objective(instance, b):
    """``||A_K b||_2^2``; exact integer arithmetic when unweighted."""
    c = imbalance(instance, b)
    return float(np.dot(c, c))


def infinity_imbalance(instance, b):
    """``||A_K b||_inf``, the worst single-row imbalance."""
    return float(np.max(np.abs(imbalance(instance, b))))


def build_qubo(instance):
    """Gram matrix ``Q = A_K^T A_K``."""
    a = instance.weighted_matrix
    return a.T @ a


def to_binary_program(q):
    """Rewrite the spin form ``b^T Q b`` over binaries via ``b = 2x - 1``.

    Returns ``(quadratic, linear, constant)`` where ``quadratic`` is upper
    triangular (diagonal holds the ``x_j^2`` coefficients, ``[j, k]`` for
    ``j < k`` the ``x_j x_k`` coefficients) so that
    ``x @ quadratic @ x + linear @ x + constant`` reproduces the spin
    objective at ``b = 2x - 1``.

    Note the substitution maps ``x = 1`` to ``b = +1``, the opposite of the
    basis-index convention; the objective is symmetric under ``b -> -b`` so
    both readings give the same values.
    """
    q = np.asarray(q)
    if q.ndim != 2 or q.shape[0] != q.shape[1]:
        raise ValidationError(f"QUBO matrix must be square, got {q.shape}")
    if not np.array_equal(q, q.T):
        raise ValidationError("QUBO matrix must be symmetric")
    quadratic = np.triu(8 * q, k=1) + np.diag(4 * np.diag(q))
    linear = -4 * q.sum(axis=1)
    constant = q.sum()
    return quadratic, linear, constant


def evaluate_binary_program(program, x):
    quadratic, linear, constant = program
    x = np.asarray(x)
    return x @ quadratic @ x + linear @ x + constant


# ---------------------------------------------------------------------------
# cost diagonal


@dataclass(frozen=True)
class CostDiagonal:
    """Objective value of every basis state; the diagonal of ``H_C``."""

    n_qubits: int
    values: np.ndarray

    def __post_init__(self):
        if self.values.shape != (1 << self.n_qubits,):
            raise ShapeError("cost diagonal length must be 2**n_qubits")

    def __len__(self):
        return len(self.values)

    @property
    def minimum(self):
        return float(self.values.min())

    def mean(self, mask=None):
        return float(self.values.mean() if mask is None else self.values[mask].mean())


def cost_diagonal(instance, max_qubits=MAX_QUBITS):
    """Tabulate ``f(x) = b^T Q b`` over all ``2**n`` basis states.

    Uses the Pauli-Z expansion ``f = tr Q + 2 sum_{j<k} Q_jk z_j z_k`` with
    ``z_j = +-1`` read from bit ``j``; no Pauli operators are built.
    """
    n = instance.n
    if n > max_qubits:
        raise SizeError(f"{n} variables exceed the {max_qubits}-qubit cap")
    q = build_qubo(instance)
    exact = not instance.is_weighted
    dtype = np.int64 if exact else float
    idx = np.arange(1 << n, dtype=np.int64)
    z = [(1 - 2 * ((idx >> j) & 1)).astype(np.int8) for j in range(n)]
    values = np.full(1 << n, np.trace(q), dtype=dtype)
    for j in range(n):
        for k in range(j + 1, n):
            if q[j, k] != 0:
                values += (2 * q[j, k]) * (z[j] * z[k]).astype(dtype)
    return CostDiagonal(n, values.astype(float))
