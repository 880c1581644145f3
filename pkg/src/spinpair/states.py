"""The four nine-parameter state families and their Bloch parameterization.

A family member is fixed by three single-spin averages (``sx, sy, sz``),
three diagonal two-spin correlators (``c1, c2, c3``) and three
cross-plane correlators (``mix_a, mix_b, mix_c``).  The mix slots always
refer to the yz, zx and xy planes in that order; whether a slot couples
to the symmetric combination ``s1a s2b + s1b s2a`` or the antisymmetric
one ``s1a s2b - s1b s2a`` depends on the family:

    family      unary signs      yz-plane   zx-plane   xy-plane
    P23         (+, +, +)        sym        sym        sym
    P14         (+, -, -)        sym        anti       anti
    P2bar3bar   (-, -, +)        anti       anti       sym
    P1bar4bar   (-, +, -)        anti       sym        anti

"unary signs" are the relative signs of the two spins in the single-spin
terms, e.g. ``sy * (s1y - s2y)`` for P14.  Symmetric mixes are KSEA-type
correlations, antisymmetric ones DM-type.  By construction every member
commutes with its family generator.
"""

from __future__ import annotations

from dataclasses import dataclass, asdict

import numpy as np

from .linalg import ID2, PSD_CLAMP, SIGMA_X, SIGMA_Y, SIGMA_Z, kron2
from .symmetry import FAMILIES, BlockReduction, commutator_norm, rotate_to_block_basis

__all__ = [
    "PARAM_FIELDS",
    "BlochState",
    "ValidityReport",
    "to_matrix",
    "from_matrix",
    "matrices_from_params",
    "validity",
    "quasidiagonal",
    "accept_params",
    "sample_domain",
    "sample_domain_params",
    "check_density_matrix",
]

PARAM_FIELDS = ("sx", "sy", "sz", "c1", "c2", "c3", "mix_a", "mix_b", "mix_c")

# per family: unary signs and whether each mix plane is symmetric (+1) or
# antisymmetric (-1)
_UNARY_SIGNS = {
    "P23": (1, 1, 1),
    "P14": (1, -1, -1),
    "P2bar3bar": (-1, -1, 1),
    "P1bar4bar": (-1, 1, -1),
}
_MIX_KIND = {
    "P23": (1, 1, 1),
    "P14": (1, -1, -1),
    "P2bar3bar": (-1, -1, 1),
    "P1bar4bar": (-1, 1, -1),
}

_PAULI = (SIGMA_X, SIGMA_Y, SIGMA_Z)
# mix planes in slot order: (yz, zx, xy)
_MIX_PLANES = ((1, 2), (2, 0), (0, 1))


def _operator_basis(family: str) -> np.ndarray:
    """The nine two-qubit operators multiplying the family parameters."""
    ex, ey, ez = _UNARY_SIGNS[family]
    ops = [
        kron2(SIGMA_X, ID2) + ex * kron2(ID2, SIGMA_X),
        kron2(SIGMA_Y, ID2) + ey * kron2(ID2, SIGMA_Y),
        kron2(SIGMA_Z, ID2) + ez * kron2(ID2, SIGMA_Z),
        kron2(SIGMA_X, SIGMA_X),
        kron2(SIGMA_Y, SIGMA_Y),
        kron2(SIGMA_Z, SIGMA_Z),
    ]
    for (a, b), kind in zip(_MIX_PLANES, _MIX_KIND[family]):
        ops.append(kron2(_PAULI[a], _PAULI[b]) + kind * kron2(_PAULI[b], _PAULI[a]))
    return np.stack(ops)


_BASIS = {f: _operator_basis(f) for f in FAMILIES}
# Hilbert-Schmidt norm^2 of each basis operator, for coefficient extraction
_BASIS_NORM2 = {f: np.einsum("kij,kij->k", _BASIS[f], np.conj(_BASIS[f])).real for f in FAMILIES}


@dataclass(frozen=True)
class BlochState:
    """One member of a symmetry family, given by its nine correlators."""

    family: str
    sx: float = 0.0
    sy: float = 0.0
    sz: float = 0.0
    c1: float = 0.0
    c2: float = 0.0
    c3: float = 0.0
    mix_a: float = 0.0
    mix_b: float = 0.0
    mix_c: float = 0.0

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; expected one of {FAMILIES}")
        for name in PARAM_FIELDS:
            v = getattr(self, name)
            if not -1.0 <= v <= 1.0:
                raise ValueError(f"parameter {name}={v} outside [-1, 1]")

    def params(self) -> np.ndarray:
        return np.array([getattr(self, n) for n in PARAM_FIELDS], dtype=float)

    def replace(self, **kwargs) -> "BlochState":
        d = asdict(self)
        d.update(kwargs)
        return BlochState(**d)

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "BlochState":
        unknown = set(d) - {"family", *PARAM_FIELDS}
        if unknown:
            raise ValueError(f"unknown BlochState keys: {sorted(unknown)}")
        if "family" not in d:
            raise ValueError("BlochState JSON requires a 'family' key")
        return cls(**d)


def matrices_from_params(family: str, params) -> np.ndarray:
    """Density matrices for a batch of parameter rows, shape (..., 9) -> (..., 4, 4)."""
    params = np.asarray(params, dtype=float)
    body = np.tensordot(params, _BASIS[family], axes=([-1], [0]))
    return (np.eye(4, dtype=complex) + body) / 4.0


def to_matrix(state: BlochState) -> np.ndarray:
    """4x4 density matrix of a family member (Hermitian, unit trace).

    Positivity is not enforced; callers probing the domain boundary may
    legitimately build indefinite matrices.
    """
    return matrices_from_params(state.family, state.params())


def from_matrix(rho, family: str, tol: float = 1e-10) -> BlochState:
    """Invert :func:`to_matrix`: extract the nine correlators of ``rho``.

    ``rho`` must be Hermitian, unit trace, and commute with the family
    generator within ``tol``; the extraction is then exact because the
    family operators span all such matrices.
    """
    rho = np.asarray(rho, dtype=complex)
    norm = commutator_norm(rho, family)
    if norm > tol:
        raise ValueError(
            f"matrix does not have {family} symmetry: commutator max-entry norm {norm:.3e} > {tol:.1e}"
        )
    basis = _BASIS[family]
    coeff = 4.0 * np.einsum("kij,ji->k", basis, rho).real / _BASIS_NORM2[family]
    # correlators can overshoot [-1,1] by rounding when rho came from I/O
    coeff = np.clip(coeff, -1.0, 1.0)
    return BlochState(family, *(float(c) for c in coeff))


@dataclass(frozen=True)
class ValidityReport:
    """Positivity verdict with the principal-minor values behind it.

    ``minor_values`` holds eight numbers: the four first-order minors of
    the quasidiagonal form (three block diagonals and the decoupled
    scalar), the three second-order principal minors of the block, and
    the block determinant.  For the P23 and P14 families these equal the
    published polynomial criteria in the nine parameters; for the other
    two families they are evaluated numerically from the rotated matrix.
    The verdict itself always comes from the minimum eigenvalue.
    """

    valid: bool
    minor_values: tuple
    min_eigenvalue: float


def _minors_p23(p: np.ndarray) -> list[float]:
    sx, sy, sz, c1, c2, c3, gx, gy, gz = p
    a1 = 1 - c1 + c2 + c3
    a2 = 1 + c1 - c2 + c3
    a3 = 1 + c1 + c2 - c3
    a4 = 1 - c1 - c2 - c3
    second = [
        a1 * a2 - 4 * (sz**2 + gz**2),
        a2 * a3 - 4 * (sx**2 + gx**2),
        a1 * a3 - 4 * (sy**2 + gy**2),
    ]
    third = (a1 * a2 * a3
             - 4 * (a1 * (sx**2 + gx**2) + a2 * (sy**2 + gy**2) + a3 * (sz**2 + gz**2))
             + 16 * (gx * sy * sz + gy * sx * sz + gz * sx * sy - gx * gy * gz))
    return [a1, a2, a3, a4, *second, third]


def _minors_p14(p: np.ndarray) -> list[float]:
    sx, sy, sz, c1, c2, c3, gx, dy, dz = p
    a1 = 1 - c1 + c2 + c3
    a2 = 1 + c1 - c2 + c3
    a3 = 1 + c1 + c2 - c3
    a4 = 1 - c1 - c2 - c3
    second = [
        a3 * a2 - 4 * (sx**2 + gx**2),
        a4 * a2 - 4 * (sy**2 + dy**2),
        a4 * a3 - 4 * (sz**2 + dz**2),
    ]
    third = (a4 * a3 * a2
             - 4 * (a4 * (sx**2 + gx**2) + a3 * (sy**2 + dy**2) + a2 * (sz**2 + dz**2))
             - 16 * (sx * sy * dz + gx * sy * sz + gx * dy * dz - sx * dy * sz))
    return [a1, a2, a3, a4, *second, third]


def _minors_numeric(state: BlochState) -> list[float]:
    rotated = rotate_to_block_basis(to_matrix(state), state.family)
    b = rotated[:3, :3] * 4.0
    first = [b[0, 0].real, b[1, 1].real, b[2, 2].real, rotated[3, 3].real * 4.0]
    second = [
        (b[0, 0] * b[1, 1] - b[0, 1] * b[1, 0]).real,
        (b[0, 0] * b[2, 2] - b[0, 2] * b[2, 0]).real,
        (b[1, 1] * b[2, 2] - b[1, 2] * b[2, 1]).real,
    ]
    third = np.linalg.det(b).real
    return [*first, *second, third]


def validity(state: BlochState) -> ValidityReport:
    """Positivity report for a family member.

    The minimum eigenvalue decides validity (with the usual clamping
    margin for boundary states); the minors are reported alongside as a
    cross-check of the polynomial domain description.
    """
    if state.family == "P23":
        minors = _minors_p23(state.params())
    elif state.family == "P14":
        minors = _minors_p14(state.params())
    else:
        minors = _minors_numeric(state)
    min_eig = float(np.linalg.eigvalsh(to_matrix(state))[0])
    return ValidityReport(valid=min_eig >= -PSD_CLAMP, minor_values=tuple(minors), min_eigenvalue=min_eig)


def quasidiagonal(state: BlochState) -> BlockReduction:
    """Quasidiagonal (3 + 1) form of a P23 member, assembled symbolically.

    The block entries are polynomial in the parameters, so no numerical
    rotation is involved and the off-block residual is exactly zero.
    Other families go through :func:`spinpair.symmetry.block_reduce`.
    """
    if state.family != "P23":
        raise ValueError(f"quasidiagonal form is for the P23 family, got {state.family!r}")
    sx, sy, sz, c1, c2, c3, gx, gy, gz = state.params()
    block = np.array([
        [1 + c1 + c2 - c3, 2 * sx + 2j * gx, 2 * gy + 2j * sy],
        [2 * sx - 2j * gx, 1 + c1 - c2 + c3, 2 * sz + 2j * gz],
        [2 * gy - 2j * sy, 2 * sz - 2j * gz, 1 - c1 + c2 + c3],
    ], dtype=complex) / 4.0
    scalar = (1 - c1 - c2 - c3) / 4.0
    return BlockReduction(block3=block, scalar1=complex(scalar), residual=0.0)


# Rotating any family member into its Bell column basis splits the nine
# parameters cleanly: the block diagonal and scalar are the four plane
# combinations 1 +- c1 +- c2 +- c3 (in a family-dependent order) and the
# three off-diagonal block entries are linear in the remaining six
# parameters.  Positivity is then exactly the non-negativity of all
# principal minors of the 3x3 block plus the scalar, which rejection
# sampling can evaluate in bulk without any eigendecompositions.


def _off_diag_coeffs(family: str) -> np.ndarray:
    """(6, 6) real map from (sx,sy,sz,mix_a,mix_b,mix_c) to the block
    off-diagonals (Re01, Im01, Re02, Im02, Re12, Im12) of 4x(O^T rho O)."""
    rows = []
    for k in (0, 1, 2, 6, 7, 8):
        kt = rotate_to_block_basis(_BASIS[family][k], family)
        rows.append([kt[0, 1].real, kt[0, 1].imag, kt[0, 2].real, kt[0, 2].imag,
                     kt[1, 2].real, kt[1, 2].imag])
    return np.array(rows, dtype=float)


def _diag_alpha_order(family: str) -> np.ndarray:
    """Indices into (a1, a2, a3, a4) giving the three block diagonals and
    the scalar of the rotated matrix."""
    signs = np.array([[-1, 1, 1], [1, -1, 1], [1, 1, -1], [-1, -1, -1]], dtype=float)
    order = []
    for slot in range(4):
        got = np.array([np.diag(rotate_to_block_basis(_BASIS[family][3 + a], family))[slot].real
                        for a in range(3)])
        (match,) = np.where((signs == got).all(axis=1))
        order.append(int(match[0]))
    return np.array(order, dtype=int)


_OFF_COEF = {f: _off_diag_coeffs(f) for f in FAMILIES}
_DIAG_ORDER = {f: _diag_alpha_order(f) for f in FAMILIES}


def accept_params(family: str, params) -> np.ndarray:
    """Exact positivity test for parameter rows, vectorized.

    Equivalent to ``min eigenvalue >= 0`` of the corresponding density
    matrices but evaluated through the principal minors of the rotated
    block form, which is orders of magnitude faster in bulk.
    """
    params = np.atleast_2d(np.asarray(params, dtype=float))
    c = params[:, 3:6]
    alphas = np.stack([
        1 - c[:, 0] + c[:, 1] + c[:, 2],
        1 + c[:, 0] - c[:, 1] + c[:, 2],
        1 + c[:, 0] + c[:, 1] - c[:, 2],
        1 - c[:, 0] - c[:, 1] - c[:, 2],
    ], axis=1)
    six = params[:, [0, 1, 2, 6, 7, 8]]
    return _accept_from_parts(family, alphas, six)


def _accept_from_parts(family: str, alphas: np.ndarray, six: np.ndarray) -> np.ndarray:
    d = alphas[:, _DIAG_ORDER[family]]
    d0, d1, d2, s = d[:, 0], d[:, 1], d[:, 2], d[:, 3]
    off = six @ _OFF_COEF[family]
    a01 = off[:, 0] ** 2 + off[:, 1] ** 2
    a02 = off[:, 2] ** 2 + off[:, 3] ** 2
    a12 = off[:, 4] ** 2 + off[:, 5] ** 2
    ok = ((d0 >= 0) & (d1 >= 0) & (d2 >= 0) & (s >= 0)
          & (d0 * d1 >= a01) & (d0 * d2 >= a02) & (d1 * d2 >= a12))
    # determinant only where the cheaper minors already passed
    idx = np.flatnonzero(ok)
    if len(idx):
        o = off[idx]
        # Re(e01 * e12 * conj(e02))
        x = o[:, 0] * o[:, 4] - o[:, 1] * o[:, 5]
        y = o[:, 0] * o[:, 5] + o[:, 1] * o[:, 4]
        tri = x * o[:, 2] + y * o[:, 3]
        det = (d0[idx] * d1[idx] * d2[idx]
               - d0[idx] * a12[idx] - d1[idx] * a02[idx] - d2[idx] * a01[idx] + 2 * tri)
        ok[idx] &= det >= 0
    return ok


def sample_domain_params(family: str, seed: int, count: int, batch: int = 2_000_000) -> np.ndarray:
    """Like :func:`sample_domain` but returning a raw ``(count, 9)`` array."""
    if count < 1:
        raise ValueError("count must be >= 1")
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}")
    rng = np.random.default_rng(seed)
    attempts = 0
    have = 0
    rows: list[np.ndarray] = []
    while have < count:
        if attempts >= 2_000_000 and have < attempts * 1e-6:
            raise RuntimeError(
                f"acceptance rate below 1e-6 for {family}: {have}/{attempts} accepted")
        if have:
            # size later batches to the measured rate to limit overshoot
            expect = int(1.3 * (count - have) * attempts / have)
            n = min(batch, max(200_000, expect))
        else:
            n = batch
        c = rng.uniform(-1.0, 1.0, size=(n, 3))
        attempts += n
        # the four plane conditions, folded: |c1 +- c2| <= 1 -+ c3
        plane_ok = (np.abs(c[:, 0] + c[:, 1]) <= 1.0 - c[:, 2]) \
            & (np.abs(c[:, 0] - c[:, 1]) <= 1.0 + c[:, 2])
        c_ok = c[plane_ok]
        alphas = np.empty((len(c_ok), 4))
        alphas[:, 0] = 1 - c_ok[:, 0] + c_ok[:, 1] + c_ok[:, 2]
        alphas[:, 1] = 1 + c_ok[:, 0] - c_ok[:, 1] + c_ok[:, 2]
        alphas[:, 2] = 1 + c_ok[:, 0] + c_ok[:, 1] - c_ok[:, 2]
        alphas[:, 3] = 1 - c_ok[:, 0] - c_ok[:, 1] - c_ok[:, 2]
        six = rng.uniform(-1.0, 1.0, size=(len(c_ok), 6))
        full_ok = _accept_from_parts(family, alphas, six)
        kept = np.concatenate([six[full_ok, 0:3], c_ok[full_ok], six[full_ok, 3:6]], axis=1)
        rows.append(kept)
        have += len(kept)
    return np.concatenate(rows)[:count]


def sample_domain(family: str, seed: int, count: int) -> list[BlochState]:
    """Rejection-sample ``count`` valid members uniformly over the domain.

    Conceptually draws parameter rows uniformly from [-1, 1]^9 and keeps
    the positive ones; the implementation tests the four plane conditions
    on (c1, c2, c3) before materializing the remaining six coordinates,
    which leaves the accepted distribution unchanged.  Deterministic for
    a given seed.  The overall acceptance rate for these families is a
    few 1e-4; a sustained rate below 1e-6 aborts as a usage error.
    """
    return [BlochState(family, *map(float, row))
            for row in sample_domain_params(family, seed, count)]


def check_density_matrix(rho, herm_tol: float = 1e-10, eig_tol: float = PSD_CLAMP) -> np.ndarray:
    """Validate a 4x4 density matrix: Hermitian, unit trace, PSD within clamps."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got {rho.shape}")
    asym = np.max(np.abs(rho - rho.conj().T))
    if asym > herm_tol:
        raise ValueError(f"not Hermitian: max |rho - rho^dagger| = {asym:.3e}")
    tr = np.trace(rho).real
    if abs(tr - 1.0) > 1e-8:
        raise ValueError(f"trace {tr} != 1")
    low = float(np.linalg.eigvalsh(rho)[0])
    if low < -eig_tol:
        raise ValueError(f"not PSD: min eigenvalue {low:.3e}")
    return rho
