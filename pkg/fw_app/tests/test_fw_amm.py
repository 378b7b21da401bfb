import math

import numpy as np
import pytest

from src.algebra import eig_hermitian
from src.errors import ConfigurationError, UnnormalizedStateError
from src.fw import (
    ReducedHamiltonian,
    amm_scaling_exponent,
    beta_parameters,
    frequencies,
    hamiltonian_full_sector,
    particle_at_rest,
    polarizability_identity_residual_scalar,
    polarization_expectations,
    reduced_hamiltonian,
    sector_energies_reduced,
    square_root_matrix,
    stationary_states,
    substitution_map,
)
from src.sectors import LandauSector, ParticleParams, make_sector


class TestFrequencies:

    def setup_method(self):
        self.params = ParticleParams(m=1.0, e=1.0, g=1.714, B=0.01)
        self.sector = make_sector(self.params, 1)

    def test_reference_values(self):
        omega0, zeta, kappa = frequencies(self.params, self.sector)
        assert omega0 == pytest.approx(1.430e-3, rel=1e-12)
        assert zeta == pytest.approx(6.04e-6, rel=2e-3)
        assert kappa == pytest.approx(3.745e-8, rel=2e-3)

    def test_normal_moment(self):
        params = ParticleParams(m=1.0, e=1.0, g=2.0, B=0.01)
        assert frequencies(params, make_sector(params, 1)) == (0.0, 0.0, 0.0)

    def test_particle_at_rest(self):
        sector = particle_at_rest(self.params)
        assert sector.eps_prime == self.params.m
        _, zeta, kappa = frequencies(self.params, sector)
        assert kappa == 0
        assert zeta != 0

    def test_requires_zero_pz(self):
        params = ParticleParams(m=1.0, e=1.0, g=1.714, B=0.01, pz=0.1)
        with pytest.raises(ConfigurationError):
            frequencies(params, make_sector(params, 1))

    def test_linear_in_g_offset(self):
        small, smaller = [
            frequencies(p, make_sector(p, 1))
            for p in (ParticleParams(g=2 - 1e-4, B=0.01), ParticleParams(g=2 - 5e-5, B=0.01))
        ]
        for a, b in zip(small, smaller):
            assert a / b == pytest.approx(2.0, rel=1e-3)


class TestBetaParameters:

    def setup_method(self):
        self.params = ParticleParams(m=1.0, e=1.0, g=1.714, B=0.01)
        self.sector = make_sector(self.params, 1)

    def test_reference_value(self):
        beta, bigY, bigZ = beta_parameters(self.params, self.sector)
        assert beta == pytest.approx(2.619e-5, rel=1e-3)
        assert bigY == pytest.approx(1 / math.sqrt(1 + beta ** 2), rel=1e-15)
        root = math.sqrt(1 + beta ** 2)
        assert bigZ ** 2 == pytest.approx(2 * root * (1 + root), rel=1e-14)

    def test_consistency_with_ratio(self):
        rng = np.random.default_rng(11)
        for _ in range(200):
            params = ParticleParams(m=rng.uniform(0.5, 2.0), e=rng.choice([-1.0, 1.0]), g=rng.uniform(1.0, 3.0), B=rng.uniform(1e-3, 0.1))
            if params.g == 2:
                continue
            sector = make_sector(params, int(rng.integers(0, 5)))
            omega0, _, kappa = frequencies(params, sector)
            beta, _, _ = beta_parameters(params, sector)
            assert beta * omega0 == pytest.approx(kappa, rel=1e-14, abs=1e-300)

    def test_at_rest(self):
        assert beta_parameters(self.params, particle_at_rest(self.params)) == (0.0, 1.0, 2.0)

    def test_normal_moment(self):
        params = ParticleParams(m=1.0, e=1.0, g=2.0, B=0.01)
        assert beta_parameters(params, make_sector(params, 1)) == (0.0, 1.0, 2.0)


class TestReducedHamiltonian:

    def setup_method(self):
        self.params = ParticleParams(m=1.0, e=1.0, g=1.714, B=0.01)
        self.sector = make_sector(self.params, 1)
        self.rh = reduced_hamiltonian(self.params, self.sector)

    def test_matrix_layout(self):
        assert self.rh.matrix[0, 2] == self.rh.kappa
        assert self.rh.matrix[2, 0] == self.rh.kappa
        assert self.rh.matrix[1, 1] == self.sector.eps_prime
        assert np.all(self.rh.matrix.imag == 0)

    def test_zero_policy_normal_moment(self):
        params = ParticleParams(m=1.0, e=1.0, g=2.0, B=0.01)
        rh = reduced_hamiltonian(params, make_sector(params, 1), h0_policy="zero")
        assert np.array_equal(rh.matrix, np.zeros((3, 3)))

    def test_force_kappa_zero(self):
        rh = reduced_hamiltonian(self.params, self.sector, force_kappa_zero=True)
        assert rh.kappa == 0 and rh.matrix[0, 2] == 0

    def test_unknown_policy(self):
        with pytest.raises(ConfigurationError):
            reduced_hamiltonian(self.params, self.sector, h0_policy="half")


class TestStationaryStates:

    def setup_method(self):
        self.params = ParticleParams(m=1.0, e=1.0, g=1.714, B=0.01)
        self.rh = reduced_hamiltonian(self.params, make_sector(self.params, 1))
        self.triplet = stationary_states(self.rh)

    def test_energies_match_eigendecomposition(self):
        values, _ = eig_hermitian(self.rh.matrix)
        closed = np.sort(self.triplet.energies)
        assert np.max(np.abs(values - closed)) <= 1e-12 * np.max(np.abs(values))

    def test_vectors_are_eigenvectors(self):
        for energy, vector in zip(self.triplet.energies, self.triplet.vectors):
            assert np.allclose(self.rh.matrix @ vector, energy * vector, atol=1e-13)

    def test_orthonormal(self):
        gram = np.array([[np.vdot(a, b) for b in self.triplet.vectors] for a in self.triplet.vectors])
        assert np.allclose(gram, np.eye(3), atol=1e-13)
        assert self.triplet.vectors[0][1] == 0 and self.triplet.vectors[2][1] == 0

    def test_closed_form_plus_state(self):
        beta, bigZ = self.triplet.beta, self.triplet.bigZ
        root = math.sqrt(1 + beta ** 2)
        assert np.allclose(self.triplet.vectors[0], [(1 + root) / bigZ, 0, beta / bigZ], atol=1e-15)

    def test_beta_zero(self):
        rh = ReducedHamiltonian.from_coefficients(1.0, 0.2, 0.05, 0.0)
        triplet = stationary_states(rh)
        assert triplet.energies == pytest.approx((1.25, 1.0, 0.85))
        for vector, basis in zip(triplet.vectors, np.eye(3)):
            assert np.allclose(vector, basis)

    def test_large_beta(self):
        triplet = stationary_states(ReducedHamiltonian.from_coefficients(0.0, 1e-6, 0.0, 1.0))
        assert triplet.bigY == pytest.approx(1e-6, rel=1e-6)

    def test_infinite_beta(self):
        rh = ReducedHamiltonian.from_coefficients(0.0, 0.0, 0.0, 0.3)
        triplet = stationary_states(rh)
        assert math.isinf(triplet.beta) and triplet.bigY == 0
        for energy, vector in zip(triplet.energies, triplet.vectors):
            assert np.allclose(rh.matrix @ vector, energy * vector, atol=1e-15)

    def test_substitution_map(self):
        mapping = substitution_map(self.rh, self.triplet)
        assert mapping["A"] == self.rh.kappa
        assert mapping["B_minus_A"] == self.rh.zeta
        assert mapping["omega_prime"] == pytest.approx(self.rh.omega0 * math.sqrt(1 + self.triplet.beta ** 2))


class TestPolarizationExpectations:

    def setup_method(self):
        params = ParticleParams(m=1.0, e=1.0, g=1.714, B=0.01)
        self.triplet = stationary_states(reduced_hamiltonian(params, make_sector(params, 1)))

    def test_middle_state(self):
        obs = polarization_expectations(self.triplet.vectors[1])
        assert obs.sz_mean == 0 and obs.sz2_mean == 0
        assert obs.s_piB2_mean == pytest.approx(1) and obs.s_pi2_mean == pytest.approx(1)

    def test_mixed_states(self):
        beta, bigY = self.triplet.beta, self.triplet.bigY
        for sign, vector in ((1, self.triplet.vectors[0]), (-1, self.triplet.vectors[2])):
            obs = polarization_expectations(vector)
            assert obs.sz_mean == pytest.approx(sign * bigY, abs=1e-13)
            assert abs(obs.sz_mean) < 1
            assert obs.sz2_mean == pytest.approx(1, abs=1e-13)
            assert obs.s_piB2_mean == pytest.approx((1 + sign * beta * bigY) / 2, abs=1e-13)
            assert obs.s_pi2_mean == pytest.approx((1 - sign * beta * bigY) / 2, abs=1e-13)
            assert obs.s_piB2_mean != obs.s_pi2_mean

    def test_cross_means_vanish(self):
        for vector in self.triplet.vectors:
            obs = polarization_expectations(vector)
            assert max(abs(v) for v in obs.cross_means.values()) <= 1e-13

    def test_sum_rule(self):
        rng = np.random.default_rng(5)
        state = rng.normal(size=3) + 1j * rng.normal(size=3)
        obs = polarization_expectations(state / np.linalg.norm(state))
        assert obs.sum_rule == pytest.approx(2, abs=1e-13)

    def test_unnormalized(self):
        with pytest.raises(UnnormalizedStateError):
            polarization_expectations([1, 1, 0])


class TestFullSectorHamiltonian:

    def test_normal_moment_reduces_to_square_root(self):
        params = ParticleParams(m=1.0, e=1.0, g=2.0, B=0.05)
        sector = make_sector(params, 2)
        assert np.allclose(hamiltonian_full_sector(params, sector), square_root_matrix(sector, params), atol=1e-14)

    def test_field_free(self):
        params = ParticleParams(m=1.0, e=1.0, g=1.714, B=0.0)
        sector = LandauSector(n=0, pi2=0.0, eps_prime=1.0, b=0.0)
        assert np.allclose(hamiltonian_full_sector(params, sector), np.eye(3), atol=1e-15)

    def test_cubic_scaling(self):
        params = ParticleParams(m=1.0, e=1.0, g=1.714)
        exponent = amm_scaling_exponent(params, 1, [1e-3, 2e-3, 5e-3, 1e-2])
        assert exponent == pytest.approx(3.0, abs=0.3)

    def test_polarizability_identity(self):
        params = ParticleParams(m=1.0, e=1.0, g=1.714, B=0.01)
        sector = make_sector(params, 3)
        scale = sector.pi2 * params.B ** 2
        assert polarizability_identity_residual_scalar(sector, params.B) <= 1e-13 * scale
        assert polarizability_identity_residual_scalar(sector, 0.0) == 0


class TestSectorEnergiesReduced:

    def test_keys_and_middle_level(self):
        params = ParticleParams(m=1.0, e=1.0, g=1.714, B=0.01)
        energies = sector_energies_reduced(params, 1)
        assert set(energies) == {1, 0, -1}
        assert energies[0] == make_sector(params, 1).eps_prime
        assert sector_energies_reduced(params, 1, "zero")[0] == 0
