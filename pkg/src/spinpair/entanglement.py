"""Concurrence and entanglement of formation for two-qubit states.

Two independent routes are provided.  The general route
(:func:`wootters_oracle`) works for any density matrix: it takes the
spectrum of ``rho @ spin_flip(rho)`` through a Hermitian similarity and
applies the concurrence formula.  The fast route (:func:`closed_form`)
applies only to the four symmetry families: there the spectral problem
splits into a decoupled scalar plus a 3x3 block whose characteristic
cubic is solved in trigonometric closed form.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import SIGMA_Y, kron2, product_spectrum
from .states import (
    BlochState,
    check_density_matrix,
    matrices_from_params,
    validity,
)
from .symmetry import rotate_to_block_basis

__all__ = [
    "EntanglementReport",
    "QInvariants",
    "spin_flip",
    "eof_from_concurrence",
    "wootters_oracle",
    "oracle_lambdas",
    "q_invariants_symbolic",
    "characteristic_cubic_roots",
    "closed_lambdas",
    "closed_form",
]

_V = kron2(SIGMA_Y, SIGMA_Y)

# The trigonometric cubic solution divides by (trQ^2 - 3m)^(3/2); below
# this threshold the three roots are treated as a triple root trQ/3.
_TRIPLE_ROOT_TOL = 1e-14
# arccos arguments may overshoot [-1, 1] by rounding, which cancellation
# inside the numerator amplifies to ~1e-11 on degenerate-root states;
# anything worse signals a formula misuse rather than noise.
_ARCCOS_SLACK = 1e-8
# Spectrum entries below this fraction of the largest one are rounding
# dust; both evaluation routes zero them so that the square roots in the
# concurrence do not amplify O(eps) noise to O(sqrt(eps)).
_DUST_REL = 1e-15


def _clean_lambdas(lam: np.ndarray) -> np.ndarray:
    lam = np.clip(lam, 0.0, None)
    lam = np.where(lam < _DUST_REL * np.max(lam, axis=-1, keepdims=True), 0.0, lam)
    return np.sort(lam, axis=-1)[..., ::-1]


def spin_flip(rho) -> np.ndarray:
    """Spin-flipped state ``(sy (x) sy) conj(rho) (sy (x) sy)``."""
    rho = np.asarray(rho, dtype=complex)
    return _V @ np.conj(rho) @ _V


@dataclass(frozen=True)
class EntanglementReport:
    """Spectrum of ``rho @ spin_flip(rho)`` plus the derived measures."""

    lambdas: np.ndarray
    concurrence: float
    eof: float
    method: str

    def to_dict(self) -> dict:
        return {
            "lambdas": [float(v) for v in self.lambdas],
            "concurrence": self.concurrence,
            "eof": self.eof,
            "method": self.method,
        }


def eof_from_concurrence(c) -> float | np.ndarray:
    """Entanglement of formation as the binary-entropy map of concurrence.

    Accepts scalars or arrays in [0, 1]; values straying outside by at
    most 1e-12 are clamped, anything worse is rejected.
    """
    c = np.asarray(c, dtype=float)
    if np.any(c < -1e-12) or np.any(c > 1 + 1e-12):
        raise ValueError(f"concurrence outside [0, 1]: {c[(c < -1e-12) | (c > 1 + 1e-12)]}")
    c = np.clip(c, 0.0, 1.0)
    x = (1.0 + np.sqrt(1.0 - c * c)) / 2.0
    y = 1.0 - x
    with np.errstate(divide="ignore", invalid="ignore"):
        h = -np.where(x > 0, x * np.log2(x), 0.0) - np.where(y > 0, y * np.log2(y), 0.0)
    h = h + 0.0  # normalize -0.0
    return float(h) if h.ndim == 0 else h


def _concurrence_from_lambdas(lambdas: np.ndarray) -> np.ndarray:
    roots = np.sqrt(np.clip(lambdas, 0.0, None))
    return np.maximum(0.0, roots[..., 0] - roots[..., 1] - roots[..., 2] - roots[..., 3])


def _report(lambdas: np.ndarray, method: str) -> EntanglementReport:
    conc = float(_concurrence_from_lambdas(lambdas))
    # rounding can push the concurrence of a maximally entangled state
    # infinitesimally above 1
    conc = min(conc, 1.0)
    return EntanglementReport(
        lambdas=lambdas,
        concurrence=conc,
        eof=float(eof_from_concurrence(conc)),
        method=method,
    )


def oracle_lambdas(rhos) -> np.ndarray:
    """Spectrum of ``rho @ spin_flip(rho)``, non-increasing; supports stacks."""
    rhos = np.asarray(rhos, dtype=complex)
    return _clean_lambdas(product_spectrum(rhos, spin_flip(rhos)))


def wootters_oracle(rho) -> EntanglementReport:
    """Concurrence and EoF of an arbitrary two-qubit state.

    Valid for any density matrix, not only the symmetry families; this
    is the brute-force reference the closed form is checked against.
    """
    rho = check_density_matrix(rho)
    return _report(oracle_lambdas(rho), "oracle")


@dataclass(frozen=True)
class QInvariants:
    """The three real invariants of the 3x3 block of the rotated product.

    ``alpha1..alpha3`` are the plane combinations of the diagonal
    correlators; ``trq``, ``m`` and ``detq`` are the trace, the sum of
    second-order principal minors and the determinant of the block,
    which coefficients the characteristic cubic.
    """

    alpha1: float
    alpha2: float
    alpha3: float
    trq: float
    m: float
    detq: float


def _p23_invariants(params: np.ndarray):
    """Published polynomial invariants of the P23 block, vectorized."""
    sx, sy, sz, c1, c2, c3, gx, gy, gz = np.moveaxis(params, -1, 0)
    a1 = 1 - c1 + c2 + c3
    a2 = 1 + c1 - c2 + c3
    a3 = 1 + c1 + c2 - c3
    trq = (a1**2 + a2**2 + a3**2 + 8 * (gx**2 + gy**2 + gz**2 - sx**2 - sy**2 - sz**2)) / 16.0
    m = (a1**2 * a2**2 + a2**2 * a3**2 + a1**2 * a3**2
         + 8 * (a1**2 * (gx**2 - sx**2) + a2**2 * (gy**2 - sy**2) + a3**2 * (gz**2 - sz**2)
                - a1 * a2 * (gz**2 + sz**2) - a2 * a3 * (gx**2 + sx**2) - a1 * a3 * (gy**2 + sy**2))
         + 16 * ((gx**2 + gy**2 + gz**2)**2 + (sx**2 + sy**2 + sz**2)**2)
         + 32 * (gx * gy * gz * (a1 + a2 + a3) + gx * sy * sz * (-a1 + a2 + a3)
                 + gy * sx * sz * (a1 - a2 + a3) + gz * sx * sy * (a1 + a2 - a3)
                 - sx**2 * (-gx**2 + gy**2 + gz**2) - sy**2 * (gx**2 - gy**2 + gz**2)
                 - sz**2 * (gx**2 + gy**2 - gz**2))
         - 128 * (gx * gy * sx * sy + gy * gz * sy * sz + gx * gz * sx * sz)) / 256.0
    detq = (a1 * a2 * a3
            - 4 * (a1 * (gx**2 + sx**2) + a2 * (gy**2 + sy**2) + a3 * (gz**2 + sz**2))
            + 16 * (gx * sy * sz + gy * sx * sz + gz * sx * sy - gx * gy * gz))**2 / 4096.0
    return a1, a2, a3, trq, m, detq


def q_invariants_symbolic(state: BlochState) -> QInvariants:
    """Closed polynomial expressions for the block invariants (P23 only)."""
    if state.family != "P23":
        raise ValueError(f"symbolic invariants apply to the P23 family, got {state.family!r}")
    a1, a2, a3, trq, m, detq = _p23_invariants(state.params())
    return QInvariants(alpha1=float(a1), alpha2=float(a2), alpha3=float(a3),
                       trq=float(trq), m=float(m), detq=float(detq))


def characteristic_cubic_roots(trq, m, detq) -> np.ndarray:
    """Real roots of ``x^3 - trq x^2 + m x - detq = 0`` in trigonometric form.

    Intended for characteristic cubics known to have three real roots.
    Supports array input; returns shape ``(..., 3)``, largest root first.
    Near a triple root the trigonometric form degenerates and the root
    ``trq / 3`` is returned three times.

    A double root makes the arccos argument hit +-1, where one ulp of
    rounding costs sqrt(eps) in the angle and splits the pair by ~1e-9.
    The dominant root sits on the flat top of the cosine and is immune,
    so the two remaining roots are recomputed from it via the invariant
    sums and products, which in particular keeps a double root at zero
    at zero instead of +-1e-9.
    """
    trq = np.asarray(trq, dtype=float)
    m = np.asarray(m, dtype=float)
    detq = np.asarray(detq, dtype=float)
    p = trq * trq - 3.0 * m
    triple = p <= _TRIPLE_ROOT_TOL
    p_safe = np.where(triple, 1.0, p)
    arg = (2.0 * trq**3 - 9.0 * m * trq + 27.0 * detq) / (2.0 * p_safe**1.5)
    overshoot = np.max(np.abs(np.where(triple, 0.0, arg))) - 1.0
    if overshoot > _ARCCOS_SLACK:
        raise ValueError(f"cubic arccos argument escapes [-1, 1] by {overshoot:.3e}")
    theta = np.arccos(np.clip(arg, -1.0, 1.0)) / 3.0
    # k = 0 is always the largest root
    big = trq / 3.0 + (2.0 / 3.0) * np.sqrt(p_safe) * np.cos(theta)
    rest_sum = trq - big
    rest_prod = np.where(np.abs(big) > 1e-300, detq / np.where(big == 0, 1.0, big), 0.0)
    disc = np.sqrt(np.clip(rest_sum * rest_sum - 4.0 * rest_prod, 0.0, None))
    mid = (rest_sum + disc) / 2.0
    low = np.where(mid != 0.0, rest_prod / np.where(mid == 0, 1.0, mid), rest_sum - mid)
    roots = np.stack([big, mid, low], axis=-1)
    return np.where(triple[..., None], trq[..., None] / 3.0, roots)


def _closed_lambdas_p23(params: np.ndarray):
    _, _, _, trq, m, detq = _p23_invariants(params)
    c1, c2, c3 = params[..., 3], params[..., 4], params[..., 5]
    scalar = (1 - c1 - c2 - c3) ** 2 / 16.0
    return characteristic_cubic_roots(trq, m, detq), scalar


def _closed_lambdas_numeric(family: str, params: np.ndarray):
    rhos = matrices_from_params(family, params)
    rot = rotate_to_block_basis(rhos, family)
    rot_t = rotate_to_block_basis(spin_flip(rhos), family)
    q = rot[..., :3, :3] @ rot_t[..., :3, :3]
    trq = np.einsum("...ii->...", q).real
    tr_q2 = np.einsum("...ij,...ji->...", q, q).real
    m = (trq * trq - tr_q2) / 2.0
    detq = np.linalg.det(q).real
    scalar = (rot[..., 3, 3] * rot_t[..., 3, 3]).real
    return characteristic_cubic_roots(trq, m, detq), scalar


def closed_lambdas(family: str, params) -> np.ndarray:
    """Closed-form spectrum of ``rho @ spin_flip(rho)`` for family members.

    For P23 the block invariants come from the published polynomials; the
    other families compute them from the numerically rotated block.  One
    eigenvalue is the decoupled scalar, the other three solve the block's
    characteristic cubic.  The result is sorted non-increasing; the
    spectrum of a product of positive matrices cannot dip below rounding
    noise, so small negatives are clamped.

    Supports parameter stacks of shape ``(..., 9)``.
    """
    params = np.asarray(params, dtype=float)
    if family == "P23":
        cubic, scalar = _closed_lambdas_p23(params)
    else:
        cubic, scalar = _closed_lambdas_numeric(family, params)
    lam = np.concatenate([cubic, np.asarray(scalar)[..., None]], axis=-1)
    low = float(np.min(lam))
    # rank-deficient boundary states condition the cubic at ~1e-9; beyond
    # that a negative root signals misuse, not rounding
    if low < -1e-9:
        raise ValueError(f"closed-form eigenvalue {low:.3e} below clamp; input outside domain?")
    return _clean_lambdas(lam)


def closed_form(state: BlochState) -> EntanglementReport:
    """Concurrence and EoF of a family member via the 3 (+) 1 reduction."""
    report = validity(state)
    if not report.valid:
        raise ValueError(
            f"state outside its positivity domain (min eigenvalue {report.min_eigenvalue:.3e})")
    return _report(closed_lambdas(state.family, state.params()), "closed_form")
