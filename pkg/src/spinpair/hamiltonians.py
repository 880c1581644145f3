"""Symmetry-compatible two-spin Hamiltonians, thermal states, evolution.

Each family Hamiltonian shares the algebraic structure of its state
family: a (family-signed) Zeeman term, anisotropic exchange couplings,
and the family's admissible triple of DM/KSEA cross couplings occupying
the ``mix_a, mix_b, mix_c`` slots with the same plane order and
symmetric/antisymmetric pattern documented in :mod:`spinpair.states`.
Energies are dimensionless; the inverse temperature carries the inverse
unit of the Hamiltonian entries.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, asdict

import numpy as np

from .linalg import ID2, SIGMA_X, SIGMA_Y, SIGMA_Z, kron2
from .states import _BASIS, check_density_matrix  # shared operator table
from .symmetry import FAMILIES, commutator_norm

__all__ = [
    "HamiltonianSpec",
    "GibbsSpec",
    "build",
    "general_hamiltonian",
    "gibbs",
    "evolve",
]

_COUPLING_FIELDS = ("Bx", "By", "Bz", "Jx", "Jy", "Jz", "mix_a", "mix_b", "mix_c")


@dataclass(frozen=True)
class HamiltonianSpec:
    """Field, exchange couplings, and the family's DM/KSEA triple."""

    family: str
    Bx: float = 0.0
    By: float = 0.0
    Bz: float = 0.0
    Jx: float = 0.0
    Jy: float = 0.0
    Jz: float = 0.0
    mix_a: float = 0.0
    mix_b: float = 0.0
    mix_c: float = 0.0

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; expected one of {FAMILIES}")
        for name in _COUPLING_FIELDS:
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"coupling {name} must be finite")

    def params(self) -> np.ndarray:
        return np.array([getattr(self, n) for n in _COUPLING_FIELDS], dtype=float)

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "HamiltonianSpec":
        unknown = set(d) - {"family", *_COUPLING_FIELDS}
        if unknown:
            raise ValueError(f"unknown HamiltonianSpec keys: {sorted(unknown)}")
        if "family" not in d:
            raise ValueError("HamiltonianSpec JSON requires a 'family' key")
        return cls(**d)


@dataclass(frozen=True)
class GibbsSpec:
    """A Hamiltonian together with a non-negative inverse temperature."""

    hamiltonian: HamiltonianSpec
    beta: float

    def __post_init__(self):
        if not (math.isfinite(self.beta) and self.beta >= 0):
            raise ValueError(f"beta must be finite and >= 0, got {self.beta}")


def build(spec: HamiltonianSpec) -> np.ndarray:
    """Assemble the 4x4 Hamiltonian; commutes exactly with the family generator."""
    return np.tensordot(spec.params(), _BASIS[spec.family], axes=(0, 0))


def general_hamiltonian(field1, field2, exchange, dm, ksea) -> np.ndarray:
    """Fully general two-qubit Hamiltonian from its fifteen couplings.

    ``field1``/``field2`` are the per-spin Zeeman vectors, ``exchange``
    the diagonal couplings, ``dm`` the antisymmetric cross-coupling
    vector and ``ksea`` the symmetric traceless one.  Gibbs states of
    this form generally fall outside all four families; it exists for
    oracle-side testing.
    """
    b1 = np.asarray(field1, dtype=float)
    b2 = np.asarray(field2, dtype=float)
    j = np.asarray(exchange, dtype=float)
    d = np.asarray(dm, dtype=float)
    g = np.asarray(ksea, dtype=float)
    if not all(v.shape == (3,) for v in (b1, b2, j, d, g)):
        raise ValueError("all five coupling vectors must have length 3")
    pauli = (SIGMA_X, SIGMA_Y, SIGMA_Z)
    h = np.zeros((4, 4), dtype=complex)
    for a in range(3):
        h += b1[a] * kron2(pauli[a], ID2) + b2[a] * kron2(ID2, pauli[a])
        h += j[a] * kron2(pauli[a], pauli[a])
    planes = ((1, 2), (2, 0), (0, 1))
    for coeff_d, coeff_g, (a, b) in zip(d, g, planes):
        h += coeff_d * (kron2(pauli[a], pauli[b]) - kron2(pauli[b], pauli[a]))
        h += coeff_g * (kron2(pauli[a], pauli[b]) + kron2(pauli[b], pauli[a]))
    return h


def gibbs(g: GibbsSpec) -> np.ndarray:
    """Thermal state ``exp(-beta H) / Z``.

    Computed in the eigenbasis with the spectrum shifted by its minimum,
    which leaves the normalized state unchanged but keeps the
    exponentials finite at any beta.
    """
    h = build(g.hamiltonian)
    w, u = np.linalg.eigh(h)
    x = np.exp(-g.beta * (w - w.min()))
    x /= x.sum()
    return (u * x) @ u.conj().T


def evolve(rho0, h: HamiltonianSpec, t: float, tol: float = 1e-10) -> np.ndarray:
    """Unitary evolution ``exp(-iHt) rho0 exp(+iHt)``.

    ``rho0`` must be a density matrix in the Hamiltonian's symmetry
    class; the class is then preserved along with trace and spectrum.
    Zero time returns the input unchanged.
    """
    rho0 = check_density_matrix(rho0)
    norm = commutator_norm(rho0, h.family)
    if norm > tol:
        raise ValueError(
            f"initial state is outside the {h.family} symmetry class: "
            f"commutator max-entry norm {norm:.3e} > {tol:.1e}")
    if t == 0:
        return rho0.copy()
    w, u = np.linalg.eigh(build(h))
    phases = np.exp(-1j * w * t)
    unitary = (u * phases) @ u.conj().T
    return unitary @ rho0 @ unitary.conj().T
