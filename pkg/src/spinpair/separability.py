"""PPT separability testing, boundary location, and phase-diagram scans.

For two qubits the positive-partial-transpose criterion is exact: a
state is separable if and only if the partial transpose has no negative
eigenvalue.  The minimum eigenvalue of the partial transpose therefore
doubles as a boundary detector whose zero crossings mark entanglement
sudden death and rebirth along parameter paths.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .entanglement import closed_lambdas, _concurrence_from_lambdas
from .linalg import PSD_CLAMP
from .states import BlochState, PARAM_FIELDS, matrices_from_params, to_matrix, validity

__all__ = [
    "SEPARABLE_TOL",
    "partial_transpose",
    "ppt_min_eig",
    "boundary_bisect",
    "ScanConfig",
    "ScanGrid",
    "scan_grid",
    "write_scan_csv",
]

# ppt_min_eig at or above this value counts as separable, so that exact
# boundary states classify stably under rounding
SEPARABLE_TOL = -1e-12


def partial_transpose(rho) -> np.ndarray:
    """Transpose on the second qubit's indices; supports stacks."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape[-2:] != (4, 4):
        raise ValueError(f"expected (..., 4, 4), got {rho.shape}")
    t = rho.reshape(rho.shape[:-2] + (2, 2, 2, 2))
    t = np.swapaxes(t, -3, -1)
    return t.reshape(rho.shape)


def ppt_min_eig(rho) -> float | np.ndarray:
    """Minimum eigenvalue of the partial transpose; >= 0 iff separable."""
    w = np.linalg.eigvalsh(partial_transpose(rho))[..., 0]
    return float(w) if w.ndim == 0 else w


def boundary_bisect(path: Callable[[float], BlochState], u_lo: float, u_hi: float,
                    tol: float = 1e-8) -> float:
    """Locate a separability boundary crossing of ``path`` by bisection.

    ``path`` maps a scalar parameter to a valid family member;
    ``ppt_min_eig`` must change sign between the endpoints.  Returns the
    crossing parameter once the bracket is narrower than ``tol``.
    """
    if not u_lo < u_hi:
        raise ValueError(f"need u_lo < u_hi, got [{u_lo}, {u_hi}]")

    def f(u: float) -> float:
        state = path(u)
        report = validity(state)
        if not report.valid:
            raise ValueError(
                f"path leaves the state domain at u={u} "
                f"(min eigenvalue {report.min_eigenvalue:.3e})")
        return ppt_min_eig(to_matrix(state))

    f_lo, f_hi = f(u_lo), f(u_hi)
    if f_lo == 0.0:
        return u_lo
    if f_hi == 0.0:
        return u_hi
    if np.sign(f_lo) == np.sign(f_hi):
        raise ValueError(
            f"no sign change on [{u_lo}, {u_hi}]: f(lo)={f_lo:.3e}, f(hi)={f_hi:.3e}")
    lo, hi = u_lo, u_hi
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        f_mid = f(mid)
        if f_mid == 0.0:
            return mid
        if np.sign(f_mid) == np.sign(f_lo):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


@dataclass(frozen=True)
class ScanConfig:
    """A 2D slice through a family's parameter space.

    ``fixed`` supplies the off-axis parameter values; ``axis1``/``axis2``
    name the two swept fields and ``range1``/``range2`` give their
    (lo, hi, steps) grids.
    """

    family: str
    fixed: BlochState
    axis1: str
    axis2: str
    range1: tuple[float, float, int]
    range2: tuple[float, float, int]

    def __post_init__(self):
        if self.fixed.family != self.family:
            raise ValueError(
                f"fixed state family {self.fixed.family!r} does not match config family {self.family!r}")
        for axis in (self.axis1, self.axis2):
            if axis not in PARAM_FIELDS:
                raise ValueError(f"unknown axis {axis!r}; expected one of {PARAM_FIELDS}")
        if self.axis1 == self.axis2:
            raise ValueError("axis1 and axis2 must differ")
        for rng in (self.range1, self.range2):
            lo, hi, steps = rng
            if not lo < hi:
                raise ValueError(f"range must have lo < hi, got {rng}")
            if int(steps) < 2:
                raise ValueError(f"range needs at least 2 steps, got {rng}")

    def axis_values(self) -> tuple[np.ndarray, np.ndarray]:
        lo1, hi1, n1 = self.range1
        lo2, hi2, n2 = self.range2
        return np.linspace(lo1, hi1, int(n1)), np.linspace(lo2, hi2, int(n2))


@dataclass(frozen=True)
class ScanGrid:
    """Scan results on a (steps2, steps1) grid, axis1 varying fastest.

    Out-of-domain cells carry NaN in ``concurrence`` and ``ppt_min_eig``;
    NaN is the explicit "not a state" sentinel, never zero.
    """

    config: ScanConfig
    in_domain: np.ndarray
    concurrence: np.ndarray
    ppt_min_eig: np.ndarray

    def cell_count(self) -> int:
        return int(self.in_domain.size)


def _cell_params(cfg: ScanConfig) -> np.ndarray:
    v1, v2 = cfg.axis_values()
    base = cfg.fixed.params()
    i1 = PARAM_FIELDS.index(cfg.axis1)
    i2 = PARAM_FIELDS.index(cfg.axis2)
    grid = np.tile(base, (len(v1) * len(v2), 1))
    grid[:, i1] = np.tile(v1, len(v2))      # axis1 fastest (row-major)
    grid[:, i2] = np.repeat(v2, len(v1))
    return grid


def _evaluate_cells(family: str, params: np.ndarray):
    rhos = matrices_from_params(family, params)
    min_eig = np.linalg.eigvalsh(rhos)[:, 0]
    in_domain = min_eig >= -PSD_CLAMP
    conc = np.full(len(params), np.nan)
    ppt = np.full(len(params), np.nan)
    if in_domain.any():
        lam = closed_lambdas(family, params[in_domain])
        conc[in_domain] = _concurrence_from_lambdas(lam)
        ppt[in_domain] = np.linalg.eigvalsh(partial_transpose(rhos[in_domain]))[:, 0]
    return in_domain, conc, ppt


def _scan_chunk(args):
    family, params = args
    return _evaluate_cells(family, params)


def scan_grid(cfg: ScanConfig, jobs: int = 1) -> ScanGrid:
    """Evaluate validity, concurrence and the PPT detector on the grid.

    Cells are independent; with ``jobs > 1`` they are partitioned across
    a process pool and reassembled in deterministic row-major order, so
    results are identical for any worker count.
    """
    params = _cell_params(cfg)
    n1 = int(cfg.range1[2])
    n2 = int(cfg.range2[2])
    if jobs <= 1 or len(params) < 4 * jobs:
        in_domain, conc, ppt = _evaluate_cells(cfg.family, params)
    else:
        chunks = np.array_split(params, jobs)
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_scan_chunk, [(cfg.family, c) for c in chunks]))
        in_domain = np.concatenate([p[0] for p in parts])
        conc = np.concatenate([p[1] for p in parts])
        ppt = np.concatenate([p[2] for p in parts])
    if not in_domain.any():
        raise ValueError("degenerate slice: no grid cell holds a valid state")
    shape = (n2, n1)
    return ScanGrid(config=cfg, in_domain=in_domain.reshape(shape),
                    concurrence=conc.reshape(shape), ppt_min_eig=ppt.reshape(shape))


def _fmt(x: float) -> str:
    return "" if np.isnan(x) else f"{x:.17g}"


def write_scan_csv(grid: ScanGrid, fh) -> None:
    """Serialize a grid: header plus one row per cell, axis1 fastest."""
    v1, v2 = grid.config.axis_values()
    fh.write(f"{grid.config.axis1},{grid.config.axis2},in_domain,concurrence,ppt_min_eig\n")
    for j, y in enumerate(v2):
        for i, x in enumerate(v1):
            fh.write(f"{x:.17g},{y:.17g},{int(grid.in_domain[j, i])},"
                     f"{_fmt(grid.concurrence[j, i])},{_fmt(grid.ppt_min_eig[j, i])}\n")
