"""Dense-matrix oracles shared by the test modules.

Everything here is built with Kronecker products and ``scipy.linalg.expm``,
independently of the simulator's tensordot/reshape code paths.  Qubit 0 is
the least significant bit, so it is the rightmost Kronecker factor.
"""
import time
from contextlib import contextmanager

import numpy as np
import pytest
from hypothesis import settings
from scipy.linalg import expm

from setbalance.instances import qaoa_example, qwoa_example
from setbalance.mixers import MixerFamily

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

PAULI = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def dense_pauli(letters):
    """Matrix of a Pauli string whose ``letters[k]`` acts on qubit ``k``."""
    out = np.ones((1, 1), dtype=complex)
    for c in reversed(letters):
        out = np.kron(out, PAULI[c])
    return out


def embed(u, qubit, n):
    """Single-qubit ``u`` on ``qubit`` of an ``n``-qubit register."""
    out = np.ones((1, 1), dtype=complex)
    for q in reversed(range(n)):
        out = np.kron(out, u if q == qubit else PAULI["I"])
    return out


def pair_term(n, pair, letter):
    letters = ["I"] * n
    for q in pair:
        letters[q] = letter
    return dense_pauli(letters)


def dense_expm(h, theta):
    """``exp(-i theta h)``."""
    return expm(-1j * theta * h)


def phase_fidelity(a, b):
    """``|<a|b>|`` for normalized states; 1 means equal up to global phase."""
    return abs(np.vdot(a, b))


def random_state(n, rng):
    v = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
    return v / np.linalg.norm(v)


def oracle_pairs(family, n):
    """Pair orders written out independently of the module's topology helpers."""
    chain = [(k - 1, k) for k in range(n - 1, 0, -1)]
    if family is MixerFamily.XY:
        return chain
    if family is MixerFamily.RING_SWAP:
        return chain + ([(0, n - 1)] if n >= 3 else [])
    allpairs = [(j, k) for j in range(n) for k in range(j + 1, n)]
    return sorted(allpairs, reverse=True)


def dense_mixer(family, beta, n):
    dim = 1 << n
    if family in (MixerFamily.X, MixerFamily.WARM_START):
        u = np.eye(dim, dtype=complex)
        for q in range(n):
            u = dense_expm(embed(PAULI["X"], q, n), beta / 2) @ u
        return u
    if family is MixerFamily.GROVER:
        s = np.full(dim, dim ** -0.5)
        return dense_expm(np.eye(dim) - 2 * np.outer(s, s), beta)
    letters = "XY" if family is MixerFamily.XY else "XYZ"
    u = np.eye(dim, dtype=complex)
    for pair in oracle_pairs(family, n):
        for c in letters:
            u = dense_expm(pair_term(n, pair, c), beta / 2) @ u
    return u


def dense_laplacian(mask):
    f = np.asarray(mask, dtype=bool)
    m = f.sum()
    lap = np.zeros((len(f), len(f)))
    idx = np.flatnonzero(f)
    for x in idx:
        for y in idx:
            lap[x, y] = m - 1 if x == y else -1
    return lap



ACCEPTANCE_LINES = []


@contextmanager
def criterion(number, title, budget):
    """Time a block and log one PASS/FAIL line; failures also fail the test."""
    notes = {}
    start = time.perf_counter()
    ok = False
    try:
        yield notes
        ok = True
    finally:
        elapsed = time.perf_counter() - start
        detail = ", ".join(f"{k}={v}" for k, v in notes.items())
        line = f"criterion {number:>2} {'PASS' if ok and elapsed < budget else 'FAIL'}: {title} ({elapsed:.1f}s of {budget:g}s) {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
    assert elapsed < budget, f"criterion {number} took {elapsed:.1f}s, budget {budget:g}s"


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture(scope="session")
def qaoa_instance():
    return qaoa_example()


@pytest.fixture(scope="session")
def qwoa_instance():
    return qwoa_example()
