"""Signed-permutation symmetries of two-qubit states and their reduction.

Four order-two groups act on the computational basis |00>,|01>,|10>,|11>:
the plain swaps of basis states 2,3 or 1,4 and their sign-flipped
variants.  Each generator commutes with sigma_y (x) sigma_y, squares to
the identity, and is diagonalized by an orthogonal matrix whose columns
are Bell states, with the -1 eigenvector placed last.  Rotating a
symmetric matrix into that Bell column basis produces a 3x3 block plus
a decoupled scalar.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "FAMILIES",
    "BlockReduction",
    "perm_matrix",
    "reducing_transform",
    "rotate_to_block_basis",
    "commutes_with",
    "commutator_norm",
    "classify",
    "block_reduce",
    "irrep_multiplicities",
]

FAMILIES = ("P23", "P14", "P2bar3bar", "P1bar4bar")

_PERM = {
    "P23": np.array([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=float),
    "P14": np.array([[0, 0, 0, 1], [0, 1, 0, 0], [0, 0, 1, 0], [1, 0, 0, 0]], dtype=float),
    "P2bar3bar": np.array([[1, 0, 0, 0], [0, 0, -1, 0], [0, -1, 0, 0], [0, 0, 0, 1]], dtype=float),
    "P1bar4bar": np.array([[0, 0, 0, -1], [0, 1, 0, 0], [0, 0, 1, 0], [-1, 0, 0, 0]], dtype=float),
}

# Bell columns scaled by sqrt(2), i.e. O = _BELL_COLS / sqrt(2).  Kept in
# integer form so that rotations can be computed as (S^T M S) / 2, which
# is exact in binary floating point.
_BELL_COLS = {
    "P23": np.array([[0, 1, 1, 0], [1, 0, 0, 1], [1, 0, 0, -1], [0, 1, -1, 0]], dtype=float),
    "P14": np.array([[1, 0, 0, 1], [0, 1, 1, 0], [0, 1, -1, 0], [1, 0, 0, -1]], dtype=float),
    "P2bar3bar": np.array([[0, 1, 1, 0], [1, 0, 0, 1], [-1, 0, 0, 1], [0, 1, -1, 0]], dtype=float),
    "P1bar4bar": np.array([[1, 0, 0, 1], [0, 1, 1, 0], [0, 1, -1, 0], [-1, 0, 0, 1]], dtype=float),
}


def _check_family(family: str) -> None:
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")


def perm_matrix(family: str) -> np.ndarray:
    """Signed permutation generator of the given symmetry family."""
    _check_family(family)
    return _PERM[family].copy()


def reducing_transform(family: str) -> np.ndarray:
    """Orthogonal matrix of Bell columns that block-diagonalizes the generator.

    The columns are the four Bell vectors ordered so the -1 eigenvector
    of ``perm_matrix(family)`` comes last, giving the 3 (+) 1 structure.
    """
    _check_family(family)
    return _BELL_COLS[family] * np.sqrt(0.5)


def rotate_to_block_basis(m, family: str) -> np.ndarray:
    """``O^T M O`` computed exactly as ``(S^T M S) / 2`` with integer S.

    Supports stacked input of shape ``(..., 4, 4)``.
    """
    _check_family(family)
    s = _BELL_COLS[family]
    m = np.asarray(m, dtype=complex)
    return (s.T @ m @ s) / 2.0


def commutator_norm(rho, family: str) -> float:
    """Max-entry norm of ``[rho, P]`` for the family generator."""
    _check_family(family)
    p = _PERM[family]
    rho = np.asarray(rho, dtype=complex)
    return float(np.max(np.abs(rho @ p - p @ rho)))


def commutes_with(rho, family: str, tol: float = 1e-10) -> bool:
    """Whether ``rho`` commutes with the family generator within ``tol``."""
    return commutator_norm(rho, family) <= tol


def classify(rho, tol: float = 1e-10) -> tuple[str, ...]:
    """All families whose generator commutes with ``rho``, in canonical order.

    The empty tuple is a valid answer; highly symmetric states (for
    instance any Bell-diagonal state) match all four families.
    """
    return tuple(f for f in FAMILIES if commutes_with(rho, f, tol))


@dataclass(frozen=True)
class BlockReduction:
    """3x3 block, decoupled scalar, and worst off-block entry of a rotation."""

    block3: np.ndarray
    scalar1: complex
    residual: float


def block_reduce(m, family: str) -> BlockReduction:
    """Rotate to the Bell column basis and split off the trailing scalar.

    The residual is the largest off-block entry magnitude and is reported
    rather than checked; callers decide how much leakage they tolerate.
    """
    rotated = rotate_to_block_basis(m, family)
    if rotated.ndim != 2:
        raise ValueError("block_reduce expects a single 4x4 matrix")
    residual = float(max(np.max(np.abs(rotated[3, :3])), np.max(np.abs(rotated[:3, 3]))))
    return BlockReduction(block3=rotated[:3, :3].copy(), scalar1=complex(rotated[3, 3]), residual=residual)


def irrep_multiplicities(chi_e: float, chi_p: float, tol: float = 1e-12) -> tuple[int, int]:
    """Multiplicities of the two irreducible representations of an order-2 group.

    For characters ``chi_e`` of the identity and ``chi_p`` of the
    generator, the symmetric and antisymmetric irreps occur
    ``(chi_e + chi_p) / 2`` and ``(chi_e - chi_p) / 2`` times.  Values
    must be integers within ``tol``.
    """
    a1 = (chi_e + chi_p) / 2.0
    a2 = (chi_e - chi_p) / 2.0
    out = []
    for a in (a1, a2):
        r = round(a)
        if abs(a - r) > tol:
            raise ValueError(f"inconsistent characters: multiplicity {a} is not an integer")
        out.append(int(r))
    return out[0], out[1]
