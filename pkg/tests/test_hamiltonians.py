import numpy as np
import pytest

from spinpair.entanglement import closed_form, wootters_oracle
from spinpair.hamiltonians import (
    GibbsSpec,
    HamiltonianSpec,
    build,
    evolve,
    general_hamiltonian,
    gibbs,
)
from spinpair.states import BlochState, from_matrix, to_matrix, validity
from spinpair.symmetry import FAMILIES, classify, perm_matrix


def xxx_antiferromagnet(j=1.0):
    return HamiltonianSpec("P23", Jx=j, Jy=j, Jz=j)


class TestBuild:
    def test_zero_couplings(self):
        assert np.array_equal(build(HamiltonianSpec("P23")), np.zeros((4, 4)))

    def test_uniform_field_z(self):
        h = build(HamiltonianSpec("P23", Bz=0.75))
        assert np.allclose(h, np.diag([1.5, 0, 0, -1.5]))

    def test_antisymmetric_xy_coupling(self):
        # mix_c slot of P14 couples antisymmetrically in the xy plane
        d = 0.37
        h = build(HamiltonianSpec("P14", mix_c=d))
        sx = np.array([[0, 1], [1, 0]], dtype=complex)
        sy = np.array([[0, -1j], [1j, 0]], dtype=complex)
        expected = d * (np.kron(sx, sy) - np.kron(sy, sx))
        assert np.max(np.abs(h - expected)) == 0.0

    @pytest.mark.parametrize("family", FAMILIES)
    def test_commutes_with_generator(self, family):
        rng = np.random.default_rng(31)
        h = build(HamiltonianSpec(family, *rng.uniform(-2, 2, size=9)))
        p = perm_matrix(family)
        assert np.max(np.abs(h @ p - p @ h)) == 0.0
        assert np.max(np.abs(h - h.conj().T)) == 0.0

    def test_rejects_non_finite(self):
        with pytest.raises(ValueError, match="finite"):
            HamiltonianSpec("P23", Jx=float("inf"))

    def test_spec_dict_round_trip(self):
        spec = HamiltonianSpec("P2bar3bar", Bx=1.0, Jy=-0.5, mix_a=0.2)
        assert HamiltonianSpec.from_dict(spec.to_dict()) == spec


class TestGeneralHamiltonian:
    def test_reduces_to_uniform_field_family(self):
        b = (0.3, -0.2, 0.5)
        j = (1.0, 0.7, -0.4)
        g = (0.15, 0.1, 0.05)
        general = general_hamiltonian(b, b, j, (0, 0, 0), g)
        family = build(HamiltonianSpec("P23", *b, *j, *g))
        assert np.max(np.abs(general - family)) == 0.0

    def test_dm_term_is_cross_product(self):
        h = general_hamiltonian((0, 0, 0), (0, 0, 0), (0, 0, 0), (0, 0, 1.0), (0, 0, 0))
        sx = np.array([[0, 1], [1, 0]], dtype=complex)
        sy = np.array([[0, -1j], [1j, 0]], dtype=complex)
        assert np.max(np.abs(h - (np.kron(sx, sy) - np.kron(sy, sx)))) == 0.0

    def test_generally_breaks_all_symmetries(self):
        h = general_hamiltonian((0.3, 0.2, 0.1), (-0.1, 0.4, 0.2),
                                (1.0, 0.5, 0.25), (0.2, 0.1, 0.3), (0.1, 0.2, 0.05))
        w, u = np.linalg.eigh(h)
        rho = (u * np.exp(-w)) @ u.conj().T
        rho /= np.trace(rho).real
        assert classify(rho) == ()
        # the oracle still handles it
        assert 0.0 <= wootters_oracle(rho).concurrence <= 1.0

    def test_shape_validation(self):
        with pytest.raises(ValueError):
            general_hamiltonian((0, 0), (0, 0, 0), (0, 0, 0), (0, 0, 0), (0, 0, 0))


class TestGibbs:
    def test_zero_hamiltonian(self):
        rho = gibbs(GibbsSpec(HamiltonianSpec("P23"), beta=3.0))
        assert np.max(np.abs(rho - np.eye(4) / 4)) < 1e-15

    def test_infinite_temperature(self):
        rho = gibbs(GibbsSpec(xxx_antiferromagnet(), beta=0.0))
        assert np.max(np.abs(rho - np.eye(4) / 4)) < 1e-15

    def test_negative_beta_rejected(self):
        with pytest.raises(ValueError, match="beta"):
            GibbsSpec(xxx_antiferromagnet(), beta=-1.0)

    def test_closed_form_matches_oracle_on_thermal_state(self):
        rho = gibbs(GibbsSpec(xxx_antiferromagnet(), beta=2.0))
        state = from_matrix(rho, "P23")
        assert validity(state).valid
        closed = closed_form(state)
        oracle = wootters_oracle(rho)
        assert abs(closed.concurrence - oracle.concurrence) < 1e-10

    @pytest.mark.parametrize("family", FAMILIES)
    def test_thermal_state_properties(self, family):
        rng = np.random.default_rng(32)
        spec = HamiltonianSpec(family, *rng.uniform(-1, 1, size=9))
        h = build(spec)
        rho = gibbs(GibbsSpec(spec, beta=1.3))
        assert np.max(np.abs(rho @ h - h @ rho)) < 1e-12
        assert family in classify(rho)
        assert from_matrix(rho, family) is not None

    def test_ground_state_limit(self):
        spec = xxx_antiferromagnet()
        h = build(spec)
        w, u = np.linalg.eigh(h)
        assert w[1] - w[0] > 1e-6  # nondegenerate ground state
        ground = u[:, 0]
        beta = 50.0 / np.max(np.abs(w))
        rho = gibbs(GibbsSpec(spec, beta=beta))
        overlap = (ground.conj() @ rho @ ground).real
        assert overlap >= 1 - 1e-8

    def test_large_beta_does_not_overflow(self):
        rho = gibbs(GibbsSpec(xxx_antiferromagnet(5.0), beta=1e6))
        assert np.isfinite(rho).all()
        assert abs(np.trace(rho) - 1) < 1e-12


class TestEvolve:
    def setup_method(self):
        rng = np.random.default_rng(33)
        self.spec = HamiltonianSpec("P23", Bz=0.4, Jx=1.0, Jy=0.6, Jz=0.3,
                                    mix_a=0.2, mix_b=0.1, mix_c=0.05)
        self.rho0 = gibbs(GibbsSpec(HamiltonianSpec("P23", Jx=0.8, Jy=0.8, Jz=0.8,
                                                    Bz=0.2), beta=1.0))

    def test_zero_time_is_identity(self):
        assert np.array_equal(evolve(self.rho0, self.spec, 0.0), self.rho0)

    def test_eigenprojector_is_stationary(self):
        h = build(self.spec)
        w, u = np.linalg.eigh(h)
        proj = np.outer(u[:, 0], u[:, 0].conj())
        out = evolve(proj, self.spec, t=2.7)
        assert np.max(np.abs(out - proj)) < 1e-12

    def test_spectrum_and_trace_preserved(self):
        out = evolve(self.rho0, self.spec, t=1.9)
        w_in = np.linalg.eigvalsh(self.rho0)
        w_out = np.linalg.eigvalsh(out)
        assert np.max(np.abs(w_in - w_out)) < 1e-10
        assert abs(np.trace(out) - 1) < 1e-12

    def test_family_symmetry_preserved(self):
        out = evolve(self.rho0, self.spec, t=0.8)
        assert "P23" in classify(out)

    def test_rejects_wrong_symmetry_class(self):
        rng = np.random.default_rng(34)
        other = to_matrix(BlochState("P14", sx=0.1, sy=0.05, sz=0.02,
                                     c1=0.2, c2=-0.1, c3=0.15,
                                     mix_a=0.1, mix_b=0.05, mix_c=0.02))
        with pytest.raises(ValueError, match="symmetry class"):
            evolve(other, self.spec, t=1.0)
