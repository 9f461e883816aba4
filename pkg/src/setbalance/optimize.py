"""Derivative-free Nelder-Mead minimization with a hard evaluation budget."""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .exceptions import OptimizerError

REFLECT, EXPAND, CONTRACT, SHRINK = 1.0, 2.0, 0.5, 0.5


@dataclass(frozen=True)
class OptimizerConfig:
    """Hyperparameters of one minimization run.

    ``initial_point=None`` means "all 0.5" in whatever dimension the loss has.
    ``max_evals`` counts loss evaluations, not simplex iterations.
    """

    method: str = "nelder-mead"
    max_evals: int = 500
    initial_point: tuple | None = None
    simplex_scale: float = 0.25
    tolerance: float = 1e-6
    seed: int = 0

    def start(self, dim):
        if self.initial_point is None:
            return np.full(dim, 0.5)
        x0 = np.asarray(self.initial_point, dtype=float)
        if x0.shape != (dim,):
            raise ValueError(f"initial point has shape {x0.shape}, loss expects ({dim},)")
        return x0.copy()


class MinimizeResult(NamedTuple):
    x: np.ndarray
    fun: float
    trace: list


class _BudgetExhausted(Exception):
    pass


class _CountedLoss:
    def __init__(self, loss, max_evals):
        self.loss = loss
        self.max_evals = max_evals
        self.count = 0
        self.best_x = None
        self.best_f = np.inf
        self.trace = []

    def __call__(self, x):
        if self.count >= self.max_evals:
            raise _BudgetExhausted
        self.count += 1
        f = float(self.loss(x))
        if not np.isfinite(f):
            raise OptimizerError(f"loss returned {f} at evaluation {self.count}", point=x.copy(), trace=self.trace)
        if f < self.best_f:
            self.best_f, self.best_x = f, x.copy()
        self.trace.append(self.best_f)
        return f


def minimize(loss, config=OptimizerConfig(), dim=None):
    """Minimize ``loss`` from ``config``'s initial point.

    Returns ``(x, fun, trace)`` where ``trace[k]`` is the best value seen
    after ``k + 1`` evaluations.  The result never exceeds the loss at the
    initial point, and the same config yields the same trace bit for bit.
    """
    if config.method.lower().replace("_", "-") not in ("nelder-mead", "neldermead"):
        raise ValueError(f"unsupported method {config.method!r}")
    if dim is None:
        if config.initial_point is None:
            raise ValueError("dimension unknown: pass dim or an initial point")
        dim = len(config.initial_point)
    if dim < 1:
        raise ValueError("dimension must be >= 1")
    if config.max_evals < dim + 1:
        raise ValueError(f"max_evals={config.max_evals} cannot fill a {dim}-D simplex")

    f = _CountedLoss(loss, config.max_evals)
    x0 = config.start(dim)
    try:
        _nelder_mead(f, x0, config.simplex_scale, config.tolerance)
    except _BudgetExhausted:
        pass
    return MinimizeResult(f.best_x, f.best_f, f.trace)


def _nelder_mead(f, x0, scale, tol):
    n = len(x0)
    simplex = np.vstack([x0] + [x0 + scale * e for e in np.eye(n)])
    values = np.array([f(x) for x in simplex])
    while True:
        order = np.argsort(values, kind="stable")
        simplex, values = simplex[order], values[order]
        if (np.max(np.abs(values[1:] - values[0])) <= tol
                and np.max(np.abs(simplex[1:] - simplex[0])) <= tol):
            return
        centroid = simplex[:-1].mean(axis=0)
        worst = simplex[-1]
        xr = centroid + REFLECT * (centroid - worst)
        fr = f(xr)
        if fr < values[0]:
            xe = centroid + EXPAND * (xr - centroid)
            fe = f(xe)
            simplex[-1], values[-1] = (xe, fe) if fe < fr else (xr, fr)
            continue
        if fr < values[-2]:
            simplex[-1], values[-1] = xr, fr
            continue
        if fr < values[-1]:
            xc = centroid + CONTRACT * (xr - centroid)
            fc = f(xc)
            if fc <= fr:
                simplex[-1], values[-1] = xc, fc
                continue
        else:
            xc = centroid + CONTRACT * (worst - centroid)
            fc = f(xc)
            if fc < values[-1]:
                simplex[-1], values[-1] = xc, fc
                continue
        for i in range(1, n + 1):
            simplex[i] = simplex[0] + SHRINK * (simplex[i] - simplex[0])
            values[i] = f(simplex[i])
