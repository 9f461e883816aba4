"""Quantum walk optimization over the full bicoloring space or a threshold subspace.

The walk runs on the complete graph joining every feasible basis state.  Its
Laplacian restricted to the feasible set ``F`` (size ``M``) is
``M (P_F - P_s)`` with ``P_s`` the projector onto the uniform feasible state,
so ``exp(-i t L) = P_s + exp(-i t M) (P_F - P_s) + (I - P_F)``; no matrix
exponential is ever formed.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import statevector as sv
from .exceptions import ShapeError, ThresholdError, ValidationError
from .mixers import MixerFamily, MixerSpec
from .optimize import OptimizerConfig, minimize
from .problem import cost_diagonal
from .qaoa import EnergyDistribution, optimize_qaoa, sample


@dataclass(frozen=True)
class WalkSpace:
    n_qubits: int
    feasible: np.ndarray

    def __post_init__(self):
        mask = np.asarray(self.feasible, dtype=bool)
        if mask.shape != (1 << self.n_qubits,):
            raise ShapeError("feasible mask must have 2**n_qubits entries")
        if not mask.any():
            raise ThresholdError("walk space has no feasible state")
        mask = mask.copy()
        mask.flags.writeable = False
        object.__setattr__(self, "feasible", mask)

    @classmethod
    def full(cls, n):
        return cls(n, np.ones(1 << n, dtype=bool))

    @property
    def size(self):
        """``M``, the number of feasible states."""
        return int(self.feasible.sum())

    @property
    def is_full(self):
        return bool(self.feasible.all())


@dataclass(frozen=True)
class QwoaParams:
    gammas: tuple
    times: tuple

    def __post_init__(self):
        g = tuple(float(v) for v in self.gammas)
        t = tuple(float(v) for v in self.times)
        if len(g) != len(t):
            raise ValidationError(f"{len(g)} gammas but {len(t)} walk times")
        if any(v < 0 for v in t):
            raise ValidationError("walk times must be non-negative")
        object.__setattr__(self, "gammas", g)
        object.__setattr__(self, "times", t)

    @property
    def rounds(self):
        return len(self.gammas)

    def to_dict(self):
        return {"rounds": self.rounds, "gammas": list(self.gammas), "times": list(self.times)}


def uniform_feasible_state(space):
    state = np.zeros(1 << space.n_qubits, dtype=complex)
    state[space.feasible] = 1.0 / np.sqrt(space.size)
    return state


def phase_unitary(state, gamma, diag, space=None):
    """``exp(-i gamma Q)``; the diagonal acts on every basis state."""
    if len(state) != len(diag.values):
        raise ShapeError("state and cost diagonal differ in size")
    return sv.apply_diagonal_phase(state, gamma * diag.values)


def walk_unitary(state, t, space):
    """Continuous-time walk on the complete feasible graph for time ``t``."""
    if t < 0:
        raise ValidationError("walk time must be non-negative")
    if len(state) != len(space.feasible):
        raise ShapeError("state and walk space differ in size")
    f = space.feasible
    phase = np.exp(-1j * t * space.size)
    out = state.copy()
    if space.is_full:
        out = phase * state + (1.0 - phase) * state.mean()
    else:
        amps = state[f]
        out[f] = phase * amps + (1.0 - phase) * amps.mean()
    return out


def prepare_state(space, params, diag, initial=None):
    state = uniform_feasible_state(space) if initial is None else initial
    for gamma, t in zip(params.gammas, params.times):
        state = walk_unitary(phase_unitary(state, gamma, diag), t, space)
    return state


def run_qwoa(instance, space, params, diag=None, initial=None):
    """Alternate phase and walk ``r`` times from the uniform feasible state."""
    if diag is None:
        diag = cost_diagonal(instance)
    return EnergyDistribution.from_state(prepare_state(space, params, diag, initial), diag)


@dataclass(frozen=True)
class LevelReduction:
    """Exact QWOA simulation on objective levels instead of basis states.

    Starting from the uniform feasible state, the phase and the walk keep all
    feasible states of equal objective at equal amplitude, so one amplitude
    per level suffices.  Infeasible states stay at zero amplitude.
    """

    levels: np.ndarray
    counts: np.ndarray
    size: int

    @classmethod
    def build(cls, diag, space, initial=None):
        if initial is not None and not np.allclose(initial, uniform_feasible_state(space), atol=1e-12):
            return None
        levels, counts = np.unique(diag.values[space.feasible], return_counts=True)
        return cls(levels, counts.astype(float), space.size)

    def amplitudes(self, gammas, times):
        amp = np.full(len(self.levels), 1.0 / np.sqrt(self.size), dtype=complex)
        phases = np.exp(-1j * np.outer(gammas, self.levels))
        walks = np.exp(-1j * np.asarray(times) * self.size)
        for ph, w in zip(phases, walks):
            amp = amp * ph
            amp = w * amp + (1.0 - w) * (np.dot(self.counts, amp) / self.size)
        return amp

    def level_probabilities(self, gammas, times):
        return self.counts * np.abs(self.amplitudes(gammas, times)) ** 2

    def expectation(self, gammas, times):
        return float(np.dot(self.level_probabilities(gammas, times), self.levels))


def natural_units(diag, space):
    """Scales that make unit optimizer steps meaningful.

    ``gamma`` is measured in units of ``1 / std(f)`` over the feasible set and
    ``t`` in units of ``1 / M`` (the walk is periodic in ``t`` with period
    ``2 pi / M``).
    """
    spread = float(np.std(diag.values[space.feasible]))
    gamma_unit = 1.0 / spread if spread > 0 else 1.0
    return gamma_unit, 1.0 / space.size


def interpolate_params(params, rounds):
    """Stretch a schedule to ``rounds`` layers by linear interpolation."""
    if params.rounds == 0:
        raise ValidationError("cannot interpolate an empty schedule")
    if params.rounds == 1:
        return QwoaParams(params.gammas * rounds, params.times * rounds)
    src = np.linspace(0.0, 1.0, params.rounds)
    dst = np.linspace(0.0, 1.0, rounds)
    return QwoaParams(tuple(np.interp(dst, src, params.gammas)), tuple(np.interp(dst, src, params.times)))


def optimize_qwoa(instance, space, r, optimizer_config=None, restarts=4, seed=0,
                  diag=None, initial=None, start=None, spread=0.2):
    """Multistart Nelder-Mead on the expectation ``<gamma,t|Q|gamma,t>``.

    Restart 0 begins at ``start`` (a :class:`QwoaParams`, e.g. an interpolated
    shallower optimum) or at the config's initial point.  Later restarts are
    drawn from a generator seeded by ``(config.seed, seed, restart)``: Gaussian
    kicks of width ``spread`` around ``start`` when one is given, otherwise
    uniform points in ``[0, pi)``, both in natural units.  Walk times are
    optimized through ``|u|`` so they stay non-negative.  Returns ``(params,
    distribution, trace)`` for the best restart, ``trace`` concatenating all
    restarts' best-so-far values.
    """
    if r < 1 or restarts < 1:
        raise ValidationError("optimize_qwoa needs r >= 1 and restarts >= 1")
    if diag is None:
        diag = cost_diagonal(instance)
    config = optimizer_config or OptimizerConfig(seed=seed)
    g_unit, t_unit = natural_units(diag, space)
    values = diag.values

    def to_params(u):
        return QwoaParams(tuple(u[0::2] * g_unit), tuple(np.abs(u[1::2]) * t_unit))

    reduced = LevelReduction.build(diag, space, initial)
    if reduced is not None:
        def loss(u):
            return reduced.expectation(u[0::2] * g_unit, np.abs(u[1::2]) * t_unit)
    else:
        def loss(u):
            state = prepare_state(space, to_params(u), diag, initial)
            return float(np.dot(sv.probabilities(state), values))

    u_start = None
    if start is not None:
        if start.rounds != r:
            raise ValidationError(f"start schedule has {start.rounds} rounds, expected {r}")
        u_start = np.empty(2 * r)
        u_start[0::2] = np.asarray(start.gammas) / g_unit
        u_start[1::2] = np.asarray(start.times) / t_unit

    best, trace = None, []
    for k in range(restarts):
        rng = np.random.default_rng([config.seed, seed, k])
        if k == 0:
            u0 = config.start(2 * r) if u_start is None else u_start
        elif u_start is not None:
            u0 = u_start + rng.normal(0.0, spread, size=2 * r)
        else:
            u0 = rng.uniform(0.0, np.pi, size=2 * r)
        run_config = OptimizerConfig(
            max_evals=config.max_evals, initial_point=tuple(u0),
            simplex_scale=config.simplex_scale, tolerance=config.tolerance, seed=config.seed,
        )
        result = minimize(loss, run_config)
        if best is None or result.fun < best.fun:
            best = result
        trace.extend(min(v, best.fun) for v in result.trace)
    params = to_params(best.x)
    return params, run_qwoa(instance, space, params, diag, initial), trace


def sweep_qwoa(instance, space, depths, optimizer_config=None, restarts=4, seed=0,
               diag=None, initial=None, spread=0.2):
    """Optimize at each depth in ascending order, warm-starting from the last.

    The first depth starts from the config's initial point; every later depth
    starts from the previous optimum stretched by :func:`interpolate_params`.
    Returns ``[(depth, params, distribution, trace), ...]``.
    """
    if diag is None:
        diag = cost_diagonal(instance)
    out, prev = [], None
    for r in sorted(set(depths)):
        if r == 0:
            out.append((0, QwoaParams((), ()), run_qwoa(instance, space, QwoaParams((), ()), diag, initial), []))
            continue
        start = None if prev is None else interpolate_params(prev, r)
        params, dist, trace = optimize_qwoa(instance, space, r, optimizer_config, restarts, seed,
                                            diag=diag, initial=initial, start=start, spread=spread)
        out.append((r, params, dist, trace))
        prev = params
    return out


def threshold_subspace(instance, x, diag=None):
    """States whose objective is at most ``x``."""
    if diag is None:
        diag = cost_diagonal(instance)
    mask = diag.values <= x + 1e-9
    if not mask.any():
        raise ThresholdError(f"no bicoloring has objective <= {x}")
    return WalkSpace(diag.n_qubits, mask)


def grover_iterations(space):
    return int(np.floor(np.pi / 4 * np.sqrt((1 << space.n_qubits) / space.size)))


def grover_prepare(space, mode="exact"):
    """Uniform superposition over the feasible set.

    ``exact`` builds it directly.  ``iterative`` runs amplitude amplification
    with a phase-flip membership oracle for ``floor(pi/4 sqrt(2^n / M))``
    rounds; its overlap with the ideal state is generally below 1.
    """
    if mode == "exact":
        return uniform_feasible_state(space)
    if mode != "iterative":
        raise ValidationError(f"unknown grover mode {mode!r}")
    state = sv.uniform_state(space.n_qubits)
    s = state.copy()
    sign = np.where(space.feasible, -1.0, 1.0)
    for _ in range(grover_iterations(space) if not space.is_full else 0):
        state = state * sign
        state = 2.0 * np.vdot(s, state) * s - state
    return state


class ModifiedQwoaResult(NamedTuple):
    distribution: EnergyDistribution
    threshold: float
    space: WalkSpace
    params: QwoaParams


def run_modified_qwoa(instance, p_seed=1, r=5, optimizer_config=None, seed=0,
                      shots=10000, restarts=4):
    """Three-stage search: shallow QAOA, threshold subspace, restricted walk.

    1. Optimize depth-``p_seed`` X-mixer QAOA and sample ``shots`` outcomes;
       the threshold ``x`` is the lowest objective among sampled outcomes
       whose exact probability exceeds ``1 / (4 shots)``.
    2. Restrict to ``{b : f(b) <= x}`` and prepare its uniform superposition.
    3. Optimize QWOA with ``r`` rounds inside that subspace.
    """
    diag = cost_diagonal(instance)
    _, dist, _ = optimize_qaoa(instance, MixerSpec(MixerFamily.X), p_seed, optimizer_config,
                               seed=seed, diag=diag)
    counts = sample(dist, shots, seed=seed)
    floor = 1.0 / (4 * shots)
    eligible = [i for i in counts if dist.probabilities[i] > floor] or list(counts)
    x = float(min(dist.values[i] for i in eligible))
    space = threshold_subspace(instance, x, diag)
    start = grover_prepare(space, "exact")
    params, final, _ = optimize_qwoa(instance, space, r, optimizer_config, restarts, seed,
                                     diag=diag, initial=start)
    return ModifiedQwoaResult(final, x, space, params)


def histogram_json(depth, dist):
    return {
        "depth": depth,
        "histogram": [{"objective": v, "probability": p} for v, p in dist.histogram()],
    }


def histogram_series_json(series):
    return json.dumps([histogram_json(d, dist) for d, dist in series], indent=2)
