import io

import numpy as np
import pytest

from conftest import BELL_PHI_PLUS, projector, werner

from spinpair.separability import (
    ScanConfig,
    boundary_bisect,
    partial_transpose,
    ppt_min_eig,
    scan_grid,
    write_scan_csv,
)
from spinpair.states import BlochState, to_matrix

FIG_PATH_BASE = dict(sx=0.15, c3=0.7, mix_a=0.16, mix_b=0.1, mix_c=0.04)


def fig_path(c1):
    return BlochState("P23", c1=c1, c2=-c1 + 0.1, **FIG_PATH_BASE)


def werner_path(p):
    # mixture of the singlet projector with white noise: all three
    # diagonal correlators equal -p
    return BlochState("P23", c1=-p, c2=-p, c3=-p)


class TestPartialTranspose:
    def test_maximally_mixed(self):
        rho = np.eye(4, dtype=complex) / 4
        assert np.array_equal(partial_transpose(rho), rho)

    def test_involution(self):
        rng = np.random.default_rng(41)
        x = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        rho = x @ x.conj().T
        rho /= np.trace(rho)
        assert np.array_equal(partial_transpose(partial_transpose(rho)), rho)

    def test_preserves_trace_and_hermiticity(self):
        rng = np.random.default_rng(42)
        x = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        rho = x @ x.conj().T
        rho /= np.trace(rho)
        pt = partial_transpose(rho)
        assert abs(np.trace(pt) - 1) < 1e-15
        assert np.max(np.abs(pt - pt.conj().T)) < 1e-15

    def test_bell_state_spectrum(self):
        w = np.linalg.eigvalsh(partial_transpose(projector(BELL_PHI_PLUS)))
        assert np.allclose(np.sort(w), [-0.5, 0.5, 0.5, 0.5], atol=1e-12)


class TestPptMinEig:
    def test_maximally_mixed(self):
        assert abs(ppt_min_eig(np.eye(4, dtype=complex) / 4) - 0.25) < 1e-15

    def test_bell_state(self):
        assert abs(ppt_min_eig(projector(BELL_PHI_PLUS)) + 0.5) < 1e-12

    def test_werner_boundary(self):
        assert abs(ppt_min_eig(werner(1 / 3))) < 1e-15

    def test_separable_product_mixtures(self):
        rng = np.random.default_rng(43)
        for _ in range(20):
            rho = np.zeros((4, 4), dtype=complex)
            for _ in range(6):
                a = rng.normal(size=2) + 1j * rng.normal(size=2)
                b = rng.normal(size=2) + 1j * rng.normal(size=2)
                a /= np.linalg.norm(a)
                b /= np.linalg.norm(b)
                rho += rng.uniform(0.1, 1.0) * projector(np.kron(a, b))
            rho /= np.trace(rho).real
            assert ppt_min_eig(rho) >= -1e-10


class TestBoundaryBisect:
    def test_werner_threshold(self):
        root = boundary_bisect(werner_path, 0.0, 1.0, tol=1e-8)
        assert abs(root - 1 / 3) < 1e-8

    def test_sudden_death_location(self):
        root = boundary_bisect(fig_path, -0.2, 0.05, tol=1e-8)
        assert abs(root - (-0.06)) < 0.01

    def test_rebirth_location(self):
        root = boundary_bisect(fig_path, 0.05, 0.3, tol=1e-8)
        assert abs(root - 0.16) < 0.01

    def test_bracket_independence(self):
        a = boundary_bisect(fig_path, -0.2, 0.05, tol=1e-10)
        b = boundary_bisect(fig_path, -0.15, 0.01, tol=1e-10)
        assert abs(a - b) < 1e-9

    def test_rejects_no_sign_change(self):
        with pytest.raises(ValueError, match="sign change"):
            boundary_bisect(werner_path, 0.5, 0.9)

    def test_rejects_invalid_path_point(self):
        def path(u):
            return BlochState("P23", c1=u, c2=u, c3=u)

        with pytest.raises(ValueError, match="domain at u="):
            boundary_bisect(path, 0.0, 0.9)


def bell_diagonal_scan(steps=41):
    return ScanConfig(
        family="P23",
        fixed=BlochState("P23", c3=0.7),
        axis1="c1",
        axis2="c2",
        range1=(-1.0, 1.0, steps),
        range2=(-1.0, 1.0, steps),
    )


class TestScanConfig:
    def test_rejects_single_step(self):
        with pytest.raises(ValueError, match="steps"):
            ScanConfig("P23", BlochState("P23"), "c1", "c2", (-1, 1, 1), (-1, 1, 5))

    def test_rejects_same_axes(self):
        with pytest.raises(ValueError, match="differ"):
            ScanConfig("P23", BlochState("P23"), "c1", "c1", (-1, 1, 5), (-1, 1, 5))

    def test_rejects_unknown_axis(self):
        with pytest.raises(ValueError, match="unknown axis"):
            ScanConfig("P23", BlochState("P23"), "q1", "c2", (-1, 1, 5), (-1, 1, 5))

    def test_rejects_bad_range(self):
        with pytest.raises(ValueError, match="lo < hi"):
            ScanConfig("P23", BlochState("P23"), "c1", "c2", (1, -1, 5), (-1, 1, 5))

    def test_rejects_family_mismatch(self):
        with pytest.raises(ValueError, match="family"):
            ScanConfig("P14", BlochState("P23"), "c1", "c2", (-1, 1, 5), (-1, 1, 5))


class TestScanGrid:
    def test_bell_diagonal_domain_and_square(self):
        grid = scan_grid(bell_diagonal_scan())
        v1, v2 = grid.config.axis_values()
        xs = np.tile(v1, (len(v2), 1))
        ys = np.tile(v2[:, None], (1, len(v1)))
        # plane values are 4x the eigenvalues, so the -1e-10 eigenvalue
        # clamp maps to -4e-10 here; it absorbs rounding on exact-boundary
        # grid cells
        clamp = -4e-10
        alpha_ok = ((1 - xs + ys + 0.7 >= clamp) & (1 + xs - ys + 0.7 >= clamp)
                    & (1 + xs + ys - 0.7 >= clamp) & (1 - xs - ys - 0.7 >= clamp))
        assert np.array_equal(grid.in_domain, alpha_ok)
        sep = grid.in_domain & (grid.ppt_min_eig >= -1e-12)
        square = grid.in_domain & (np.abs(xs) + np.abs(ys) <= 0.3 + 1e-12)
        step = v1[1] - v1[0]
        mismatch = sep ^ square
        # disagreements may only hug the square's boundary
        assert np.all(np.abs(np.abs(xs[mismatch]) + np.abs(ys[mismatch]) - 0.3) <= step + 1e-9)

    def test_detector_agreement(self):
        grid = scan_grid(bell_diagonal_scan())
        mask = grid.in_domain
        entangled = grid.concurrence[mask] > 1e-9
        ppt_negative = grid.ppt_min_eig[mask] < -1e-12
        assert np.array_equal(entangled, ppt_negative)

    def test_out_of_domain_cells_are_nan(self):
        grid = scan_grid(bell_diagonal_scan())
        outside = ~grid.in_domain
        assert outside.any()
        assert np.isnan(grid.concurrence[outside]).all()
        assert np.isnan(grid.ppt_min_eig[outside]).all()

    def test_mixed_family_slice_differs(self):
        base = dict(sx=0.15, c3=0.7, mix_a=0.16, mix_b=0.1, mix_c=0.04)
        cfg23 = ScanConfig("P23", BlochState("P23", **base), "c1", "c2",
                           (-1, 1, 41), (-1, 1, 41))
        cfg14 = ScanConfig("P14", BlochState("P14", **base), "c1", "c2",
                           (-1, 1, 41), (-1, 1, 41))
        g23 = scan_grid(cfg23)
        g14 = scan_grid(cfg14)
        sep23 = g23.in_domain & (g23.ppt_min_eig >= -1e-12)
        sep14 = g14.in_domain & (g14.ppt_min_eig >= -1e-12)
        assert (sep23 != sep14).sum() > 10
        assert (g23.in_domain != g14.in_domain).sum() > 10

    def test_domain_smaller_than_bell_rectangle_with_mixes(self):
        base = dict(sx=0.15, c3=0.7, mix_a=0.16, mix_b=0.1, mix_c=0.04)
        cfg = ScanConfig("P23", BlochState("P23", **base), "c1", "c2",
                         (-1, 1, 41), (-1, 1, 41))
        grid = scan_grid(cfg)
        bell = scan_grid(bell_diagonal_scan())
        assert grid.in_domain.sum() < bell.in_domain.sum()
        assert not (grid.in_domain & ~bell.in_domain).any()

    def test_rejects_degenerate_slice(self):
        cfg = ScanConfig("P23", BlochState("P23", c3=0.99), "c1", "c2",
                         (0.9, 1.0, 5), (0.9, 1.0, 5))
        with pytest.raises(ValueError, match="degenerate"):
            scan_grid(cfg)

    def test_jobs_do_not_change_results(self):
        cfg = bell_diagonal_scan(21)
        serial = scan_grid(cfg, jobs=1)
        parallel = scan_grid(cfg, jobs=2)
        assert np.array_equal(serial.in_domain, parallel.in_domain)
        assert np.array_equal(serial.concurrence, parallel.concurrence, equal_nan=True)
        assert np.array_equal(serial.ppt_min_eig, parallel.ppt_min_eig, equal_nan=True)


class TestWriteScanCsv:
    def test_layout(self):
        grid = scan_grid(bell_diagonal_scan(5))
        buf = io.StringIO()
        write_scan_csv(grid, buf)
        lines = buf.getvalue().strip().split("\n")
        assert lines[0] == "c1,c2,in_domain,concurrence,ppt_min_eig"
        assert len(lines) == 1 + 25
        first = lines[1].split(",")
        assert first[0] == "-1" and first[1] == "-1"
        # corner cell is outside the domain: flag 0, empty measurements
        assert first[2] == "0" and first[3] == "" and first[4] == ""
