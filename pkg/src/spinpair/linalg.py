"""Dense complex linear algebra kernel for small Hermitian problems.

Everything here operates on plain ``numpy`` arrays and supports stacked
input: an array of shape ``(..., n, n)`` is treated as a batch of
matrices and the result carries the leading dimensions through.  Sizes
of interest are 2, 3 and 4 (two qubits) and up to 32 (five qubits).
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "SIGMA_X",
    "SIGMA_Y",
    "SIGMA_Z",
    "ID2",
    "PSD_CLAMP",
    "hermitian_eigenvalues",
    "hermitian_sqrt",
    "hermitian_exp",
    "kron2",
    "product_spectrum",
]

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
ID2 = np.eye(2, dtype=complex)

# Negative eigenvalues with magnitude at most PSD_CLAMP are treated as
# rounding noise and clamped to zero; anything more negative is an error.
PSD_CLAMP = 1e-10

_HERM_TOL = 1e-10


def _as_square(m) -> np.ndarray:
    m = np.asarray(m, dtype=complex)
    if m.ndim < 2 or m.shape[-1] != m.shape[-2]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    return m


def max_asymmetry(m) -> float:
    """Largest entry of ``|M - M^dagger|`` over the whole batch."""
    m = _as_square(m)
    return float(np.max(np.abs(m - np.conj(np.swapaxes(m, -1, -2)))))


def _require_hermitian(m: np.ndarray, tol: float) -> None:
    asym = max_asymmetry(m)
    if asym > tol:
        raise ValueError(f"matrix is not Hermitian: max |M - M^dagger| = {asym:.3e} > {tol:.1e}")


def hermitian_eigenvalues(m, tol: float = _HERM_TOL) -> np.ndarray:
    """Eigenvalues of a Hermitian matrix, sorted non-increasing.

    Parameters
    ----------
    m : array_like, shape (..., n, n)
        Hermitian within ``tol`` (checked entrywise against the adjoint).
    tol : float
        Maximum tolerated asymmetry before the input is rejected.

    Returns
    -------
    np.ndarray, shape (..., n)
        Real eigenvalues in non-increasing order.
    """
    m = _as_square(m)
    _require_hermitian(m, tol)
    w = np.linalg.eigvalsh(m)
    return w[..., ::-1]


def hermitian_sqrt(m, tol: float = PSD_CLAMP) -> np.ndarray:
    """Positive semidefinite square root of a PSD Hermitian matrix.

    Eigenvalues in ``[-tol, 0)`` are clamped to zero; more negative ones
    reject the input as non-PSD.
    """
    m = _as_square(m)
    _require_hermitian(m, _HERM_TOL)
    w, u = np.linalg.eigh(m)
    low = float(np.min(w))
    if low < -tol:
        raise ValueError(f"matrix is not PSD: min eigenvalue {low:.3e} < -{tol:.1e}")
    s = np.sqrt(np.clip(w, 0.0, None))
    return np.einsum("...ik,...k,...jk->...ij", u, s, np.conj(u))


def hermitian_exp(m, scale: float = 1.0) -> np.ndarray:
    """``exp(scale * M)`` for Hermitian ``M`` via eigendecomposition.

    The result is Hermitian positive definite for real ``scale``.
    """
    m = _as_square(m)
    _require_hermitian(m, _HERM_TOL)
    w, u = np.linalg.eigh(m)
    return np.einsum("...ik,...k,...jk->...ij", u, np.exp(scale * w), np.conj(u))


def kron2(a, b) -> np.ndarray:
    """Kronecker product of two 2x2 matrices, basis order |00>,|01>,|10>,|11>."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != (2, 2) or b.shape != (2, 2):
        raise ValueError(f"kron2 expects 2x2 inputs, got {a.shape} and {b.shape}")
    return np.kron(a, b)


def product_spectrum(a, b, tol: float = PSD_CLAMP) -> np.ndarray:
    """Spectrum of ``A @ B`` for PSD ``A`` and ``B``, sorted non-increasing.

    The product of two PSD matrices is generally non-Hermitian but has a
    real non-negative spectrum, computed here as the eigenvalues of the
    Hermitian matrix ``sqrt(A) @ B @ sqrt(A)``.  Negative results within
    ``tol`` are clamped to zero.
    """
    a = _as_square(a)
    b = _as_square(b)
    if a.shape[-2:] != b.shape[-2:]:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    s = hermitian_sqrt(a, tol=tol)
    _require_hermitian(b, _HERM_TOL)
    lowb = float(np.min(np.linalg.eigvalsh(b)))
    if lowb < -tol:
        raise ValueError(f"second factor is not PSD: min eigenvalue {lowb:.3e}")
    w = np.linalg.eigvalsh(s @ b @ s)
    w = np.clip(w, 0.0, None)
    return w[..., ::-1]
