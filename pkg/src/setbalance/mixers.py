"""QAOA mixer unitaries: six families, two circuit realizations each.

Gate-decomposition mode follows the textbook circuits built from native
``R_X``, ``R_XX``, ``R_YY`` and ``R_ZZ`` gates (plus an H/CNOT/R_Z ladder for
the higher-weight Grover terms).  Pauli-exponential mode expresses every
factor as ``exp(-i theta sigma)`` and runs it through
:func:`setbalance.pauli.compile_pauli_exponential`.  Both modes implement
the same unitary up to a global phase.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from itertools import combinations

import numpy as np

from . import statevector as sv
from .exceptions import ValidationError
from .pauli import PauliString, apply_gates, compile_pauli_exponential, gate_count
from .problem import as_bicoloring

# The Grover circuit's rotation parameter is this multiple of the angle beta in
# exp(-i beta (I - 2|s><s|)).  Fixed by comparing the circuit against the dense
# exponential of the Grover generator.
GROVER_CIRCUIT_ANGLE_SCALE = 2.0


class MixerFamily(str, Enum):
    X = "x"
    XY = "xy"
    FULL_SWAP = "full_swap"
    RING_SWAP = "ring_swap"
    GROVER = "grover"
    WARM_START = "warm_start"


class Realization(str, Enum):
    GATE = "gate"
    PAULI = "pauli"


_ALIASES = {
    "fullswap": "full_swap", "full-swap": "full_swap", "swap": "full_swap",
    "ringswap": "ring_swap", "ring-swap": "ring_swap", "ring": "ring_swap",
    "warmstart": "warm_start", "warm-start": "warm_start", "warm": "warm_start",
    "gatedecomposition": "gate", "gate_decomposition": "gate", "gate-decomposition": "gate",
    "decomposed": "gate", "pauliexponential": "pauli", "pauli_exponential": "pauli",
    "pauli-exponential": "pauli", "scaled": "pauli",
}


def _lookup(enum, name):
    if isinstance(name, enum):
        return name
    key = str(name).strip().lower()
    key = _ALIASES.get(key, key)
    try:
        return enum(key)
    except ValueError:
        valid = ", ".join(m.value for m in enum)
        raise ValidationError(f"unknown {enum.__name__} {name!r}; valid options: {valid}") from None


def parse_family(name):
    return _lookup(MixerFamily, name)


def parse_realization(name):
    return _lookup(Realization, name)


@dataclass(frozen=True)
class MixerSpec:
    family: MixerFamily = MixerFamily.X
    realization: Realization = Realization.GATE
    warm_start_solution: tuple | None = None
    warm_start_epsilon: float = 0.25

    def __post_init__(self):
        object.__setattr__(self, "family", _lookup(MixerFamily, self.family))
        object.__setattr__(self, "realization", _lookup(Realization, self.realization))
        if self.family is MixerFamily.WARM_START:
            if self.warm_start_solution is None:
                raise ValidationError("warm_start family needs a warm_start_solution")
            b = as_bicoloring(self.warm_start_solution)
            object.__setattr__(self, "warm_start_solution", tuple(int(v) for v in b))
        elif self.warm_start_solution is not None:
            raise ValidationError(f"{self.family.value} mixer takes no warm_start_solution")
        if not 0.0 < self.warm_start_epsilon <= 0.5:
            raise ValidationError("warm_start_epsilon must lie in (0, 0.5]")


# ---------------------------------------------------------------------------
# topologies


def xy_pairs(n):
    """Open chain, last pair first: (n-2, n-1), ..., (0, 1)."""
    return [(k, k + 1) for k in reversed(range(n - 1))]


def full_swap_pairs(n):
    """All pairs in reverse lexicographic order: for 3 qubits (1,2), (0,2), (0,1)."""
    return list(reversed(list(combinations(range(n), 2))))


def ring_pairs(n):
    """Chain pairs last-first, then the wrap pair (0, n-1)."""
    pairs = xy_pairs(n)
    if n >= 3:
        pairs.append((0, n - 1))
    return pairs


def grover_supports(n):
    """Every non-empty qubit subset, by weight then lexicographically."""
    return [s for w in range(1, n + 1) for s in combinations(range(n), w)]


# ---------------------------------------------------------------------------
# Pauli-exponential terms: (PauliString, angle multiplier) with factor exp(-i mult*beta*sigma)


@lru_cache(maxsize=256)
def _pauli_terms(family, n):
    terms = []
    if family in (MixerFamily.X, MixerFamily.WARM_START):
        terms = [(PauliString.from_support(n, (q,), "X"), 0.5) for q in range(n)]
    elif family in (MixerFamily.XY, MixerFamily.FULL_SWAP, MixerFamily.RING_SWAP):
        pairs = {MixerFamily.XY: xy_pairs, MixerFamily.FULL_SWAP: full_swap_pairs,
                 MixerFamily.RING_SWAP: ring_pairs}[family](n)
        letters = "XY" if family is MixerFamily.XY else "XYZ"
        for pair in pairs:
            terms.extend((PauliString.from_support(n, pair, c), 0.5) for c in letters)
    elif family is MixerFamily.GROVER:
        # |s><s| = 2^-n sum_S X_S, so exp(-i beta (I - 2|s><s|)) is, up to
        # phase, the product over S != {} of exp(+i beta 2^(1-n) X_S)
        coeff = -(2.0 ** (1 - n))
        terms = [(PauliString.from_support(n, s, "X"), coeff) for s in grover_supports(n)]
    return tuple((sigma, mult, compile_pauli_exponential(sigma)) for sigma, mult in terms)


def _apply_pauli_mixer(state, beta, family, n):
    for sigma, mult, plan in _pauli_terms(family, n):
        state = apply_gates(state, plan.gates(mult * beta))
    if family is MixerFamily.GROVER:
        # phase left over from the identity term and the -beta*I part of the generator
        state = state * np.exp(-1j * beta * (1.0 - 2.0 ** (1 - n)))
    return state


# ---------------------------------------------------------------------------
# gate-decomposition circuits


def _apply_grover_circuit(state, beta, n):
    phi = GROVER_CIRCUIT_ANGLE_SCALE * beta
    c = 2.0 ** (1 - n)
    for s in grover_supports(n):
        if len(s) == 1:
            state = sv.apply_single_qubit(state, s[0], sv.rx(-c * phi), check=False)
        elif len(s) == 2:
            state = sv.apply_gate(state, s, sv.rxx(-c * phi), check=False)
        else:
            for q in s:
                state = sv.apply_single_qubit(state, q, sv.H, check=False)
            ladder = [(s[i], s[i - 1]) for i in range(len(s) - 1, 0, -1)]
            for ctrl, tgt in ladder:
                state = sv.apply_controlled_not(state, ctrl, tgt)
            state = sv.apply_single_qubit(state, s[0], sv.rz(-c * phi), check=False)
            for ctrl, tgt in reversed(ladder):
                state = sv.apply_controlled_not(state, ctrl, tgt)
            for q in s:
                state = sv.apply_single_qubit(state, q, sv.H, check=False)
    return state


def _apply_gate_mixer(state, beta, family, n):
    if family in (MixerFamily.X, MixerFamily.WARM_START):
        u = sv.rx(beta)
        for q in range(n):
            state = sv.apply_single_qubit(state, q, u, check=False)
        return state
    if family is MixerFamily.GROVER:
        return _apply_grover_circuit(state, beta, n)
    if family is MixerFamily.XY:
        pairs, gates = xy_pairs(n), (sv.rxx(beta), sv.ryy(beta))
    else:
        pairs = full_swap_pairs(n) if family is MixerFamily.FULL_SWAP else ring_pairs(n)
        gates = (sv.rxx(beta), sv.ryy(beta), sv.rzz(beta))
    for pair in pairs:
        for u in gates:
            state = sv.apply_gate(state, pair, u, check=False)
    return state


def mixer_layer(state, beta, spec):
    """Apply one mixer layer with angle ``beta``."""
    n = sv.n_qubits(state)
    if spec.family is MixerFamily.WARM_START and len(spec.warm_start_solution) != n:
        raise ValidationError("warm-start solution length does not match the register")
    if spec.realization is Realization.PAULI:
        return _apply_pauli_mixer(state, beta, spec.family, n)
    return _apply_gate_mixer(state, beta, spec.family, n)


def mixer_cnot_count(spec, n):
    """CNOTs in one mixer layer, two-qubit rotations counted as two CNOTs each."""
    if spec.realization is Realization.PAULI:
        return sum(gate_count(plan)[0] for _, _, plan in _pauli_terms(spec.family, n))
    family = spec.family
    if family in (MixerFamily.X, MixerFamily.WARM_START):
        return 0
    if family is MixerFamily.XY:
        return 4 * len(xy_pairs(n))
    if family is MixerFamily.FULL_SWAP:
        return 6 * len(full_swap_pairs(n))
    if family is MixerFamily.RING_SWAP:
        return 6 * len(ring_pairs(n))
    return sum(2 * (len(s) - 1) for s in grover_supports(n))


def warm_start_initial_state(solution, epsilon=0.25):
    """Product state leaning towards ``solution``.

    Qubit ``k`` is rotated by ``R_Y(2 arcsin sqrt(p_k))`` from ``|0>`` where
    ``p_k = epsilon`` when ``b_k = +1`` (bit 0 suggested) and ``1 - epsilon``
    otherwise, so each suggested value carries probability ``1 - epsilon``.
    """
    b = as_bicoloring(solution)
    if not 0.0 < epsilon <= 0.5:
        raise ValidationError("epsilon must lie in (0, 0.5]")
    n = len(b)
    state = sv.basis_state(n, 0)
    for k, v in enumerate(b):
        p_one = epsilon if v == 1 else 1.0 - epsilon
        state = sv.apply_single_qubit(state, k, sv.ry(2.0 * np.arcsin(np.sqrt(p_one))))
    return state


def initial_state(spec, n):
    if spec.family is MixerFamily.WARM_START:
        return warm_start_initial_state(spec.warm_start_solution, spec.warm_start_epsilon)
    return sv.uniform_state(n)
