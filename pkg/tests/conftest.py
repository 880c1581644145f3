import numpy as np


def charpoly_coeffs(m) -> np.ndarray:
    """Characteristic polynomial coefficients via the Faddeev-LeVerrier
    recursion; combined with np.roots this gives an eigenvalue oracle
    independent of the Hermitian solvers under test."""
    m = np.asarray(m, dtype=complex)
    n = m.shape[0]
    coeffs = [1.0 + 0j]
    ak = np.eye(n, dtype=complex)
    for k in range(1, n + 1):
        ak = m @ ak
        c = -np.trace(ak) / k
        coeffs.append(c)
        ak = ak + c * np.eye(n)
    return np.array(coeffs)


def charpoly_roots_desc(m) -> np.ndarray:
    """Real parts of the characteristic roots, sorted non-increasing."""
    return np.sort(np.roots(charpoly_coeffs(m)).real)[::-1]


def random_hermitian(rng, n: int) -> np.ndarray:
    x = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return (x + x.conj().T) / 2


def random_psd(rng, n: int) -> np.ndarray:
    x = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return x @ x.conj().T


BELL_PHI_PLUS = np.array([1, 0, 0, 1], dtype=complex) / np.sqrt(2)
BELL_PHI_MINUS = np.array([1, 0, 0, -1], dtype=complex) / np.sqrt(2)
BELL_PSI_PLUS = np.array([0, 1, 1, 0], dtype=complex) / np.sqrt(2)
BELL_PSI_MINUS = np.array([0, 1, -1, 0], dtype=complex) / np.sqrt(2)


def projector(vec) -> np.ndarray:
    v = np.asarray(vec, dtype=complex)
    return np.outer(v, v.conj())


def werner(p: float) -> np.ndarray:
    return p * projector(BELL_PSI_MINUS) + (1 - p) * np.eye(4) / 4
