"""Dense statevector primitives.

A state on ``n`` qubits is a flat complex numpy array of length ``2**n``.
Bit ``k`` of a basis index belongs to qubit ``k`` (qubit 0 is the least
significant bit).  In the problem encoding qubit ``k`` carries variable
``b_k``; a set bit means spin ``-1`` and a clear bit spin ``+1``.

Every function returns a new array and leaves its input untouched.
"""
from __future__ import annotations

from functools import lru_cache

import numpy as np

from .exceptions import ShapeError, SizeError, ValidationError

MAX_QUBITS = 26
UNITARY_TOL = 1e-10
NORM_TOL = 1e-9

# ---------------------------------------------------------------------------
# gate matrices

I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)
H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
S = np.array([[1, 0], [0, 1j]], dtype=complex)
SDG = S.conj().T


def rx(theta):
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    return np.array([[c, -1j * s], [-1j * s, c]], dtype=complex)


def ry(theta):
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    return np.array([[c, -s], [s, c]], dtype=complex)


def rz(theta):
    return np.diag([np.exp(-0.5j * theta), np.exp(0.5j * theta)])


def rxx(theta):
    """``exp(-i theta/2 X⊗X)``."""
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    return np.array(
        [[c, 0, 0, -1j * s], [0, c, -1j * s, 0], [0, -1j * s, c, 0], [-1j * s, 0, 0, c]],
        dtype=complex,
    )


def ryy(theta):
    """``exp(-i theta/2 Y⊗Y)``."""
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    return np.array(
        [[c, 0, 0, 1j * s], [0, c, -1j * s, 0], [0, -1j * s, c, 0], [1j * s, 0, 0, c]],
        dtype=complex,
    )


def rzz(theta):
    """``exp(-i theta/2 Z⊗Z)``."""
    a, b = np.exp(-0.5j * theta), np.exp(0.5j * theta)
    return np.diag([a, b, b, a])


# ---------------------------------------------------------------------------
# state construction and inspection


def n_qubits(state):
    """Number of qubits of a flat amplitude array."""
    size = len(state)
    n = size.bit_length() - 1
    if size < 2 or (1 << n) != size:
        raise ShapeError(f"state length {size} is not a power of two >= 2")
    return n


def _check_size(n):
    if not 1 <= n <= MAX_QUBITS:
        raise SizeError(f"qubit count {n} outside [1, {MAX_QUBITS}]")


def uniform_state(n):
    """Equal superposition ``|+>^n``."""
    _check_size(n)
    dim = 1 << n
    return np.full(dim, 1.0 / np.sqrt(dim), dtype=complex)


def basis_state(n, index):
    _check_size(n)
    if not 0 <= index < (1 << n):
        raise ShapeError(f"basis index {index} outside [0, 2**{n})")
    state = np.zeros(1 << n, dtype=complex)
    state[index] = 1.0
    return state


def probabilities(state):
    return np.abs(state) ** 2


def inner_product(a, b):
    """``<a|b>`` with the conjugate taken on ``a``."""
    if len(a) != len(b):
        raise ShapeError(f"states of length {len(a)} and {len(b)} differ")
    return complex(np.vdot(a, b))


def fidelity(a, b):
    """``|<a|b>|``; equals 1 iff the states agree up to global phase."""
    return abs(inner_product(a, b))


# ---------------------------------------------------------------------------
# unitary actions


def apply_diagonal_phase(state, angles):
    """Multiply amplitude ``x`` by ``exp(-i angles[x])``."""
    angles = np.asarray(angles, dtype=float)
    if angles.shape != (len(state),):
        raise ShapeError(f"{angles.shape[0] if angles.ndim else 0} angles for {len(state)} amplitudes")
    return state * np.exp(-1j * angles)


def _check_unitary(u, dim):
    u = np.asarray(u, dtype=complex)
    if u.shape != (dim, dim):
        raise ValidationError(f"gate must be {dim}x{dim}, got {u.shape}")
    if not np.allclose(u.conj().T @ u, np.eye(dim), atol=UNITARY_TOL, rtol=0):
        raise ValidationError("gate matrix is not unitary")
    return u


def apply_gate(state, qubits, u, *, check=True):
    """Apply a ``k``-qubit gate ``u`` to the listed qubits.

    ``u`` is indexed with ``qubits[0]`` as its most significant bit, the usual
    textbook ordering for two-qubit matrices.
    """
    n = n_qubits(state)
    qubits = [int(q) for q in qubits]
    k = len(qubits)
    if len(set(qubits)) != k or any(not 0 <= q < n for q in qubits):
        raise ShapeError(f"invalid qubit list {qubits} for {n} qubits")
    u = _check_unitary(u, 1 << k) if check else np.asarray(u, dtype=complex)
    # axis n-1-q of the reshaped tensor carries qubit q
    axes = [n - 1 - q for q in qubits]
    psi = state.reshape((2,) * n)
    out = np.tensordot(u.reshape((2,) * (2 * k)), psi, axes=(list(range(k, 2 * k)), axes))
    out = np.moveaxis(out, list(range(k)), axes)
    return out.reshape(-1)


def apply_single_qubit(state, qubit, u, *, check=True):
    """Apply a 2x2 unitary to one qubit."""
    n = n_qubits(state)
    if not 0 <= qubit < n:
        raise ShapeError(f"qubit {qubit} outside register of {n}")
    u = _check_unitary(u, 2) if check else np.asarray(u, dtype=complex)
    low = 1 << qubit
    psi = state.reshape(-1, 2, low)
    return np.einsum("ij,ajb->aib", u, psi).reshape(-1)


@lru_cache(maxsize=512)
def _cnot_permutation(n, control, target):
    idx = np.arange(1 << n)
    perm = idx ^ (((idx >> control) & 1) << target)
    perm.flags.writeable = False
    return perm


def apply_controlled_not(state, control, target):
    n = n_qubits(state)
    if control == target:
        raise ValueError("control and target must differ")
    if not (0 <= control < n and 0 <= target < n):
        raise ShapeError(f"CNOT({control}->{target}) outside register of {n}")
    return state[_cnot_permutation(n, control, target)]


def check_norm(state, tol=NORM_TOL):
    drift = abs(float(np.sum(probabilities(state))) - 1.0)
    if drift > tol:
        raise ValidationError(f"state norm drifted by {drift:.3e}")
    return state
