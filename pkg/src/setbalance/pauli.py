"""Pauli strings and their exponentials compiled to H/S/R_X/CNOT circuits.

``exp(-i theta sigma)`` is realized by conjugating every non-identity letter
into the X basis (Z via H, Y via S-dagger), folding the X-string onto one
anchor qubit with a star of CNOTs controlled by the anchor, and rotating the
anchor with ``R_X(2 theta)``:

    sigma = V^dag C X_anchor C V   =>   exp(-i theta sigma) = V^dag C R_X(2 theta) C V

where ``C`` is the product of ``CNOT(anchor -> t)`` over the other support
qubits ``t``.  The anchor is the highest-index non-identity qubit.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from . import statevector as sv
from .exceptions import ShapeError, ValidationError

_LETTERS = "IXYZ"


@dataclass(frozen=True)
class PauliString:
    """Tensor product of single-qubit Paulis; ``letters[k]`` acts on qubit ``k``."""

    letters: str

    def __post_init__(self):
        letters = "".join(self.letters).upper()
        if not letters or any(c not in _LETTERS for c in letters):
            raise ValidationError(f"invalid Pauli letters {self.letters!r}")
        object.__setattr__(self, "letters", letters)

    @classmethod
    def from_support(cls, n, support, letter="X"):
        chars = ["I"] * n
        for q in support:
            chars[q] = letter
        return cls("".join(chars))

    @property
    def n_qubits(self):
        return len(self.letters)

    @property
    def support(self):
        return tuple(k for k, c in enumerate(self.letters) if c != "I")

    @property
    def weight(self):
        return len(self.support)

    def __str__(self):
        return self.letters

    def commutes_with(self, other):
        if other.n_qubits != self.n_qubits:
            raise ShapeError("Pauli strings act on different registers")
        clashes = sum(
            1 for a, b in zip(self.letters, other.letters) if a != "I" and b != "I" and a != b
        )
        return clashes % 2 == 0


@dataclass(frozen=True)
class Gate:
    """One primitive gate: ``h``, ``s``, ``sdg``, ``rx`` or ``cnot``."""

    name: str
    qubits: tuple
    angle: float | None = None

    def inverse(self):
        if self.name == "s":
            return Gate("sdg", self.qubits)
        if self.name == "sdg":
            return Gate("s", self.qubits)
        if self.name == "rx":
            return Gate("rx", self.qubits, -self.angle)
        return self

    def to_dict(self):
        if self.name == "cnot":
            return {"gate": "cnot", "control": self.qubits[0], "target": self.qubits[1]}
        d = {"gate": self.name, "qubit": self.qubits[0]}
        if self.angle is not None:
            d["angle"] = self.angle
        return d


_FIXED = {"h": sv.H, "s": sv.S, "sdg": sv.SDG}


def apply_gates(state, gates):
    """Run a gate list on a state."""
    for g in gates:
        if g.name == "cnot":
            state = sv.apply_controlled_not(state, *g.qubits)
        elif g.name == "rx":
            state = sv.apply_single_qubit(state, g.qubits[0], sv.rx(g.angle), check=False)
        else:
            state = sv.apply_single_qubit(state, g.qubits[0], _FIXED[g.name], check=False)
    return state


@dataclass(frozen=True)
class PauliRotationPlan:
    target: PauliString
    pre_ops: tuple
    core_qubit: int
    post_ops: tuple

    def gates(self, theta):
        """Full gate list for ``exp(-i theta sigma)``."""
        return self.pre_ops + (Gate("rx", (self.core_qubit,), 2.0 * theta),) + self.post_ops

    def to_json(self, theta=None):
        core = {"gate": "rx", "qubit": self.core_qubit}
        if theta is not None:
            core["angle"] = 2.0 * theta
        ops = [g.to_dict() for g in self.pre_ops] + [core] + [g.to_dict() for g in self.post_ops]
        return json.dumps(ops)


def compile_pauli_exponential(sigma):
    if sigma.weight == 0:
        raise ValidationError("all-identity string has no rotation; apply a global phase instead")
    support = sigma.support
    anchor = support[-1]
    basis = []
    for q in support:
        letter = sigma.letters[q]
        if letter == "Z":
            basis.append(Gate("h", (q,)))
        elif letter == "Y":
            basis.append(Gate("sdg", (q,)))
    star = [Gate("cnot", (anchor, t)) for t in support[:-1]]
    pre = tuple(basis + star)
    post = tuple(g.inverse() for g in reversed(pre))
    return PauliRotationPlan(sigma, pre, anchor, post)


def apply_pauli_exponential(state, sigma, theta, plan=None):
    """``exp(-i theta sigma) |state>``."""
    if sigma.n_qubits != sv.n_qubits(state):
        raise ShapeError(f"{sigma.n_qubits}-qubit string on {sv.n_qubits(state)}-qubit state")
    if sigma.weight == 0:
        return state * np.exp(-1j * theta)
    if plan is None:
        plan = compile_pauli_exponential(sigma)
    return apply_gates(state, plan.gates(theta))


def gate_count(plan):
    """``(cnots, single_qubit_gates)`` including the core rotation."""
    ops = plan.pre_ops + plan.post_ops
    cnots = sum(1 for g in ops if g.name == "cnot")
    return cnots, len(ops) - cnots + 1
