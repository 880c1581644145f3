"""Permutation-symmetric states of up to five qubits and pair reduction.

The two-qubit reduced density matrix of any permutation-symmetric state
is built from the single-site averages and the symmetric two-site
correlation matrix alone, and always lands in the swap-symmetric (P23)
family, because the swap generator is the Dirac exchange operator
``(1 + sigma_1 . sigma_2) / 2``.  The closed-form pair entanglement
therefore extends to symmetric many-qubit systems.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations, permutations

import numpy as np

from .linalg import SIGMA_X, SIGMA_Y, SIGMA_Z
from .states import BlochState, validity

__all__ = [
    "MAX_QUBITS",
    "MomentSet",
    "qubit_count",
    "twirl_symmetrize",
    "reduce_pair",
    "moments_of",
    "pair_from_moments",
    "random_state",
    "dirac_exchange",
]

MAX_QUBITS = 5

_PAULI = (SIGMA_X, SIGMA_Y, SIGMA_Z)


def qubit_count(rho) -> int:
    """Number of qubits of a many-body density matrix, validated."""
    rho = np.asarray(rho)
    dim = rho.shape[-1]
    if rho.ndim != 2 or rho.shape != (dim, dim):
        raise ValueError(f"expected a square matrix, got shape {rho.shape}")
    n = dim.bit_length() - 1
    if 2 ** n != dim or not 2 <= n <= MAX_QUBITS:
        raise ValueError(f"dimension {dim} is not 2^n with 2 <= n <= {MAX_QUBITS}")
    return n


def _perm_index(n: int, perm: tuple[int, ...]) -> np.ndarray:
    """Basis-index permutation sending qubit k's bit to position perm[k]."""
    idx = np.arange(2 ** n)
    out = np.zeros_like(idx)
    for src in range(n):
        bit = (idx >> (n - 1 - src)) & 1
        out |= bit << (n - 1 - perm[src])
    return out


def _permute_qubits(rho: np.ndarray, n: int, perm: tuple[int, ...]) -> np.ndarray:
    dest = _perm_index(n, perm)
    out = np.empty_like(rho)
    out[np.ix_(dest, dest)] = rho
    return out


def twirl_symmetrize(rho) -> np.ndarray:
    """Average over all qubit permutations; the result is exactly symmetric.

    The loop covers n! permutations, capped at five qubits (120 terms).
    """
    rho = np.asarray(rho, dtype=complex)
    n = qubit_count(rho)
    acc = np.zeros_like(rho)
    for perm in permutations(range(n)):
        acc += _permute_qubits(rho, n, perm)
    return acc / math.factorial(n)


def is_permutation_symmetric(rho, tol: float = 1e-10) -> bool:
    """Whether ``rho`` commutes with every transposition unitary."""
    rho = np.asarray(rho, dtype=complex)
    n = qubit_count(rho)
    for i, j in combinations(range(n), 2):
        perm = list(range(n))
        perm[i], perm[j] = perm[j], perm[i]
        if np.max(np.abs(_permute_qubits(rho, n, tuple(perm)) - rho)) > tol:
            return False
    return True


def reduce_pair(rho, i: int, j: int) -> np.ndarray:
    """Partial trace down to qubits ``i`` and ``j`` (1-based, in that order)."""
    rho = np.asarray(rho, dtype=complex)
    n = qubit_count(rho)
    if not (1 <= i <= n and 1 <= j <= n):
        raise ValueError(f"qubit indices must lie in [1, {n}], got ({i}, {j})")
    if i == j:
        raise ValueError("qubit indices must differ")
    if n == 2 and (i, j) == (1, 2):
        return rho.copy()
    keep = (i - 1, j - 1)
    rest = [k for k in range(n) if k not in keep]
    tensor = rho.reshape((2,) * (2 * n))
    row_axes = [*keep, *rest]
    col_axes = [n + a for a in row_axes]
    tensor = tensor.transpose(row_axes + col_axes)
    tensor = tensor.reshape(4, 2 ** (n - 2), 4, 2 ** (n - 2))
    return np.einsum("akbk->ab", tensor)


@dataclass(frozen=True)
class MomentSet:
    """Single-site averages and the symmetric two-site correlation matrix."""

    s: np.ndarray
    t: np.ndarray


def moments_of(rho, tol: float = 1e-10) -> MomentSet:
    """First and second spin moments of a permutation-symmetric state.

    Site choice is immaterial by symmetry, so the moments are read off
    the (1, 2) pair reduction; asymmetric input is rejected.
    """
    rho = np.asarray(rho, dtype=complex)
    if not is_permutation_symmetric(rho, tol):
        raise ValueError(f"state is not permutation symmetric within {tol:.1e}")
    pair = reduce_pair(rho, 1, 2)
    s = np.array([np.trace(pair @ np.kron(p, np.eye(2))).real for p in _PAULI])
    t = np.array([[np.trace(pair @ np.kron(a, b)).real for b in _PAULI] for a in _PAULI])
    t = (t + t.T) / 2.0
    return MomentSet(s=s, t=t)


def pair_from_moments(ms: MomentSet) -> BlochState:
    """Swap-symmetric pair state carrying the given moments.

    The diagonal of ``t`` fills the c-correlators and the off-diagonal
    fills the three symmetric cross-plane slots.  Moments that are not
    realizable as a pair state flag an upstream bug and are rejected.
    """
    t = np.asarray(ms.t, dtype=float)
    if t.shape != (3, 3) or np.max(np.abs(t - t.T)) != 0.0:
        raise ValueError("moment matrix t must be exactly symmetric 3x3")
    state = BlochState(
        "P23",
        sx=float(ms.s[0]), sy=float(ms.s[1]), sz=float(ms.s[2]),
        c1=float(t[0, 0]), c2=float(t[1, 1]), c3=float(t[2, 2]),
        mix_a=float(t[1, 2]), mix_b=float(t[0, 2]), mix_c=float(t[0, 1]),
    )
    report = validity(state)
    if not report.valid:
        raise ValueError(
            f"moments are not realizable as a pair state "
            f"(min eigenvalue {report.min_eigenvalue:.3e})")
    return state


def random_state(n: int, seed: int) -> np.ndarray:
    """Random full-rank density matrix on ``n`` qubits (Wishart-style)."""
    if not 2 <= n <= MAX_QUBITS:
        raise ValueError(f"n must lie in [2, {MAX_QUBITS}]")
    rng = np.random.default_rng(seed)
    dim = 2 ** n
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = a @ a.conj().T
    return rho / np.trace(rho).real


def dirac_exchange() -> np.ndarray:
    """The two-qubit exchange (SWAP) operator ``(1 + sigma_1 . sigma_2) / 2``."""
    out = np.eye(4, dtype=complex)
    for p in _PAULI:
        out += np.kron(p, p)
    return out / 2.0
