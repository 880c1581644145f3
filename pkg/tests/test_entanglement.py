import numpy as np
import pytest

from conftest import (
    BELL_PHI_PLUS,
    BELL_PHI_MINUS,
    BELL_PSI_PLUS,
    BELL_PSI_MINUS,
    charpoly_roots_desc,
    projector,
    werner,
)

from spinpair.entanglement import (
    characteristic_cubic_roots,
    closed_form,
    closed_lambdas,
    eof_from_concurrence,
    oracle_lambdas,
    q_invariants_symbolic,
    spin_flip,
    wootters_oracle,
)
from spinpair.states import BlochState, sample_domain_params, matrices_from_params, to_matrix
from spinpair.symmetry import FAMILIES, reducing_transform, rotate_to_block_basis

FIG_PATH_BASE = dict(sx=0.15, c3=0.7, mix_a=0.16, mix_b=0.1, mix_c=0.04)


def fig_path_state(c1):
    return BlochState("P23", c1=c1, c2=-c1 + 0.1, **FIG_PATH_BASE)


class TestSpinFlip:
    def test_maximally_mixed_fixed(self):
        rho = np.eye(4, dtype=complex) / 4
        assert np.array_equal(spin_flip(rho), rho)

    def test_product_state_flips(self):
        rho = np.zeros((4, 4), dtype=complex)
        rho[0, 0] = 1.0
        flipped = spin_flip(rho)
        expected = np.zeros((4, 4), dtype=complex)
        expected[3, 3] = 1.0
        assert np.array_equal(flipped, expected)

    @pytest.mark.parametrize("vec", [BELL_PHI_PLUS, BELL_PHI_MINUS, BELL_PSI_PLUS, BELL_PSI_MINUS])
    def test_bell_states_invariant(self, vec):
        rho = projector(vec)
        assert np.max(np.abs(spin_flip(rho) - rho)) < 1e-15


class TestEofFromConcurrence:
    def test_endpoints(self):
        assert eof_from_concurrence(0.0) == 0.0
        assert eof_from_concurrence(1.0) == 1.0

    def test_half_fixture(self):
        # frozen from direct evaluation of the binary-entropy map
        assert abs(eof_from_concurrence(0.5) - 0.35457890266527003) < 1e-15

    def test_monotone(self):
        grid = np.linspace(0, 1, 1000)
        vals = eof_from_concurrence(grid)
        assert np.all(np.diff(vals) >= 0)

    def test_clamps_tiny_overshoot(self):
        assert eof_from_concurrence(1.0 + 5e-13) == 1.0
        assert eof_from_concurrence(-5e-13) == 0.0

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            eof_from_concurrence(1.01)
        with pytest.raises(ValueError):
            eof_from_concurrence(-0.01)


class TestWoottersOracle:
    def test_bell_state(self):
        report = wootters_oracle(projector(BELL_PHI_PLUS))
        assert np.allclose(report.lambdas, [1, 0, 0, 0], atol=1e-12)
        assert abs(report.concurrence - 1) < 1e-12
        assert abs(report.eof - 1) < 1e-12
        assert report.method == "oracle"

    def test_maximally_mixed(self):
        report = wootters_oracle(np.eye(4, dtype=complex) / 4)
        assert np.allclose(report.lambdas, [1 / 16] * 4, atol=1e-14)
        assert report.concurrence == 0.0
        assert report.eof == 0.0

    def test_werner_states(self):
        # analytic concurrence max(0, (3p-1)/2), cross-checked against the
        # characteristic roots of the non-Hermitian product; the polynomial
        # root finder only resolves the triply degenerate eigenvalue to
        # ~eps^(1/3), hence the loose tolerance on that leg
        for p in (0.2, 1 / 3, 0.5, 0.8, 1.0):
            rho = werner(p)
            report = wootters_oracle(rho)
            assert abs(report.concurrence - max(0.0, (3 * p - 1) / 2)) < 1e-12
            ref = charpoly_roots_desc(rho @ spin_flip(rho))
            assert np.max(np.abs(report.lambdas - np.clip(ref, 0, None))) < 5e-6

    def test_rejects_unnormalized(self):
        with pytest.raises(ValueError):
            wootters_oracle(np.eye(4, dtype=complex))


class TestQInvariantsSymbolic:
    def test_origin(self):
        inv = q_invariants_symbolic(BlochState("P23"))
        assert (inv.alpha1, inv.alpha2, inv.alpha3) == (1, 1, 1)
        assert inv.trq == 3 / 16
        assert inv.m == 3 / 256
        assert inv.detq == 1 / 4096

    def test_bell_diagonal_trace(self):
        state = BlochState("P23", c1=0.4, c2=-0.3, c3=0.2)
        inv = q_invariants_symbolic(state)
        expected = (inv.alpha1**2 + inv.alpha2**2 + inv.alpha3**2) / 16
        assert abs(inv.trq - expected) < 1e-15

    def test_matches_numeric_block(self):
        params = sample_domain_params("P23", seed=61, count=300)
        rhos = matrices_from_params("P23", params)
        rot = rotate_to_block_basis(rhos, "P23")
        rot_t = rotate_to_block_basis(spin_flip(rhos), "P23")
        q = rot[:, :3, :3] @ rot_t[:, :3, :3]
        tr_num = np.einsum("nii->n", q).real
        m_num = (tr_num**2 - np.einsum("nij,nji->n", q, q).real) / 2
        det_num = np.linalg.det(q).real
        for k, row in enumerate(params):
            inv = q_invariants_symbolic(BlochState("P23", *row))
            assert abs(inv.trq - tr_num[k]) < 1e-10
            assert abs(inv.m - m_num[k]) < 1e-10
            assert abs(inv.detq - det_num[k]) < 1e-10

    def test_rejects_other_families(self):
        with pytest.raises(ValueError, match="P23"):
            q_invariants_symbolic(BlochState("P14"))


class TestCharacteristicCubicRoots:
    def test_integer_roots(self):
        # (x-1)(x-2)(x-3): trace 6, minor sum 11, determinant 6
        roots = np.sort(characteristic_cubic_roots(6.0, 11.0, 6.0))
        assert np.allclose(roots, [1, 2, 3], atol=1e-12)

    def test_triple_root(self):
        roots = characteristic_cubic_roots(3.0, 3.0, 1.0)
        assert np.allclose(roots, [1, 1, 1], atol=1e-12)

    def test_vieta_on_sampled_states(self):
        params = sample_domain_params("P23", seed=62, count=500)
        for row in params[:100]:
            inv = q_invariants_symbolic(BlochState("P23", *row))
            roots = characteristic_cubic_roots(inv.trq, inv.m, inv.detq)
            assert abs(roots.sum() - inv.trq) < 1e-12
            assert abs(np.prod(roots) - inv.detq) < 1e-12
            pair_sum = roots[0] * roots[1] + roots[0] * roots[2] + roots[1] * roots[2]
            assert abs(pair_sum - inv.m) < 1e-12

    def test_rejects_escaped_argument(self):
        with pytest.raises(ValueError, match="arccos"):
            characteristic_cubic_roots(0.0, -3.0, 20.0)


class TestClosedForm:
    def test_bell_state(self):
        report = closed_form(BlochState("P23", c1=1, c2=-1, c3=1))
        assert np.array_equal(report.lambdas, [1.0, 0.0, 0.0, 0.0])
        assert report.concurrence == 1.0
        assert report.eof == 1.0
        assert report.method == "closed_form"

    def test_scan_path_point_is_entangled_and_decreasing(self):
        c_here = closed_form(fig_path_state(-0.3)).concurrence
        c_next = closed_form(fig_path_state(-0.29)).concurrence
        assert c_here > 0
        assert c_next < c_here

    def test_rejects_invalid_state(self):
        with pytest.raises(ValueError, match="positivity"):
            closed_form(BlochState("P23", c1=1, c2=1, c3=1))

    @pytest.mark.parametrize("family", FAMILIES)
    def test_matches_oracle(self, family):
        params = sample_domain_params(family, seed=63, count=500)
        lam_closed = closed_lambdas(family, params)
        lam_oracle = oracle_lambdas(matrices_from_params(family, params))
        assert np.max(np.abs(lam_closed - lam_oracle)) < 1e-9

    @pytest.mark.parametrize("family", FAMILIES)
    def test_spectrum_invariant_in_rotated_frame(self, family):
        # rotating rho and its spin flip consistently is a similarity of
        # their product, so the spectrum must not move; the product also
        # inherits the family symmetry
        from spinpair.linalg import product_spectrum
        from spinpair.symmetry import perm_matrix

        params = sample_domain_params(family, seed=65, count=5)
        o = reducing_transform(family)
        p = perm_matrix(family)
        for row in params:
            rho = to_matrix(BlochState(family, *row))
            flipped = spin_flip(rho)
            lam_direct = oracle_lambdas(rho)
            lam_rotated = np.sort(np.clip(product_spectrum(
                o.T @ rho @ o, o.T @ flipped @ o), 0, None))[::-1]
            assert np.max(np.abs(lam_direct - lam_rotated)) < 1e-12
            r = rho @ flipped
            assert np.max(np.abs(r @ p - p @ r)) < 1e-14

    def test_det_identity(self):
        params = sample_domain_params("P14", seed=66, count=200)
        rhos = matrices_from_params("P14", params)
        det_r = np.linalg.det(rhos @ spin_flip(rhos)).real
        det_rho = np.abs(np.linalg.det(rhos)) ** 2
        assert np.max(np.abs(det_r - det_rho)) < 1e-10
