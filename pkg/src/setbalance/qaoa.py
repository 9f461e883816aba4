"""QAOA state preparation, optimization, sampling and scoring."""
from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from . import statevector as sv
from .exceptions import ConsistencyError, ShapeError, ValidationError
from .mixers import MixerFamily, MixerSpec, initial_state, mixer_layer
from .optimize import OptimizerConfig, minimize
from .problem import bitstring, cost_diagonal


@dataclass(frozen=True)
class QaoaParams:
    gammas: tuple
    betas: tuple

    def __post_init__(self):
        g = tuple(float(v) for v in self.gammas)
        b = tuple(float(v) for v in self.betas)
        if len(g) != len(b):
            raise ValidationError(f"{len(g)} gammas but {len(b)} betas")
        object.__setattr__(self, "gammas", g)
        object.__setattr__(self, "betas", b)

    @property
    def depth(self):
        return len(self.gammas)

    def to_vector(self):
        """Interleaved ``[gamma_0, beta_0, gamma_1, beta_1, ...]``."""
        return np.ravel(np.column_stack([self.gammas, self.betas])) if self.depth else np.zeros(0)

    @classmethod
    def from_vector(cls, x):
        x = np.asarray(x, dtype=float)
        if len(x) % 2:
            raise ShapeError("parameter vector must have even length")
        return cls(tuple(x[0::2]), tuple(x[1::2]))

    def to_dict(self):
        return {"depth": self.depth, "gammas": list(self.gammas), "betas": list(self.betas)}


@dataclass(frozen=True)
class EnergyDistribution:
    """Exact outcome distribution over basis states, annotated with objectives."""

    probabilities: np.ndarray
    values: np.ndarray
    expectation: float

    @classmethod
    def from_state(cls, state, diag):
        values = diag.values if hasattr(diag, "values") else np.asarray(diag, dtype=float)
        probs = sv.probabilities(state)
        if len(probs) != len(values):
            raise ShapeError("state and cost diagonal differ in size")
        return cls(probs, values, float(np.dot(probs, values)))

    @property
    def n_qubits(self):
        return sv.n_qubits(self.probabilities)

    def entries(self, floor=0.0):
        """``(index, probability, objective)`` for outcomes above ``floor``."""
        idx = np.flatnonzero(self.probabilities > floor)
        return [(int(i), float(self.probabilities[i]), float(self.values[i])) for i in idx]

    def histogram(self, decimals=9):
        """Total probability per objective value, ascending objective."""
        levels = np.round(self.values, decimals)
        uniq, inverse = np.unique(levels, return_inverse=True)
        mass = np.bincount(inverse, weights=self.probabilities, minlength=len(uniq))
        return [(float(v), float(p)) for v, p in zip(uniq, mass)]

    def probability_of(self, objective_value, atol=1e-9):
        return float(self.probabilities[np.abs(self.values - objective_value) <= atol].sum())

    def to_records(self, floor=0.0):
        n = self.n_qubits
        return [
            {"bitstring": bitstring(i, n), "probability": p, "objective": v}
            for i, p, v in self.entries(floor)
        ]


def cost_layer(state, gamma, diag):
    """``exp(-i gamma H_C)``: phase ``-gamma f(x)`` on amplitude ``x``."""
    return sv.apply_diagonal_phase(state, gamma * diag.values)


def prepare_state(spec, params, diag):
    state = initial_state(spec, diag.n_qubits)
    for gamma, beta in zip(params.gammas, params.betas):
        state = cost_layer(state, gamma, diag)
        state = mixer_layer(state, beta, spec)
    return state


def run_qaoa(instance, spec, params, diag=None):
    """Simulate the depth-``p`` ansatz and return its exact distribution."""
    if diag is None:
        diag = cost_diagonal(instance)
    return EnergyDistribution.from_state(prepare_state(spec, params, diag), diag)


def optimize_qaoa(instance, spec, p, optimizer_config=None, seed=0, diag=None):
    """Tune ``(gamma, beta)`` by minimizing the exact expectation of ``H_C``.

    Returns ``(params, distribution, trace)``; ``trace`` is the best-so-far
    expectation per loss evaluation.  The run is deterministic: the seed is
    only forwarded to the optimizer config.
    """
    if p < 1:
        raise ValidationError("optimize_qaoa needs depth p >= 1")
    if diag is None:
        diag = cost_diagonal(instance)
    config = optimizer_config or OptimizerConfig(seed=seed)
    values = diag.values

    def loss(x):
        state = prepare_state(spec, QaoaParams.from_vector(x), diag)
        return float(np.dot(sv.probabilities(state), values))

    result = minimize(loss, config, dim=2 * p)
    params = QaoaParams.from_vector(result.x)
    return params, run_qaoa(instance, spec, params, diag), result.trace


def sample(dist, shots, seed=None):
    """Multinomial measurement counts ``{basis index: count}``."""
    if shots < 1:
        raise ValueError("shots must be >= 1")
    rng = np.random.default_rng(seed)
    p = np.clip(dist.probabilities, 0.0, None)
    counts = rng.multinomial(shots, p / p.sum())
    return {int(i): int(counts[i]) for i in np.flatnonzero(counts)}


def best_sampled(dist, counts):
    """Lowest objective among measured outcomes, and its basis index."""
    index = min(counts, key=lambda i: (dist.values[i], i))
    return float(dist.values[index]), index


def approximation_ratio(ground, found):
    """``ground / found``, defined as 1 when both are zero."""
    if ground < 0:
        raise ValidationError("ground-state objective must be non-negative")
    if found < ground - 1e-9:
        raise ConsistencyError(f"found objective {found} below ground state {ground}")
    if found == 0:
        return 1.0
    return min(1.0, ground / found)


def results_json(params, dist, trace, alpha=None, floor=0.0, extra=None):
    payload = {
        "params": params.to_dict(),
        "expectation": dist.expectation,
        "distribution": dist.to_records(floor),
        "trace": list(trace),
    }
    if alpha is not None:
        payload["alpha"] = alpha
    if extra:
        payload.update(extra)
    return json.dumps(payload, indent=2)


__all__ = [
    "EnergyDistribution", "MixerFamily", "MixerSpec", "QaoaParams", "approximation_ratio",
    "best_sampled", "cost_layer", "mixer_layer", "optimize_qaoa", "prepare_state",
    "results_json", "run_qaoa", "sample",
]
