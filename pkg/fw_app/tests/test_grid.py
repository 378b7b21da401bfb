import math

import numpy as np
import pytest

from src.errors import ConfigurationError, GFactorError, GridResolutionError, UnsupportedFieldError
from src.grid import (
    FieldSpec,
    GridSpec,
    block_structure_residuals,
    build_operators,
    commutator_mo_residual,
    conserved_projection_residuals,
    convergence_order,
    exact_fw_identity_residual,
    gauge_shift_residual,
    interior_basis,
    landau_level_estimates,
    landau_multiplicities,
    landau_spectrum_grid,
    lowest_modes,
    operator_norm,
    orbital_operators,
    peierls_pi2,
    pseudo_hermiticity_residual,
    refinement_study,
)
from src.sectors import ParticleParams
from src.utils import load_config
from tests.conftest import CONFIG_PATH

NORMAL = ParticleParams(m=1.0, e=1.0, g=2.0)
ANOMALOUS = ParticleParams(m=1.0, e=1.0, g=1.714)


class TestFieldSpec:

    def test_unknown_kind(self):
        with pytest.raises(ConfigurationError):
            FieldSpec("dipole")

    @pytest.mark.parametrize("field", [
        FieldSpec("uniform_z", B0=0.5),
        FieldSpec("quadrupole", G=0.125),
        FieldSpec("sheared_z", B0=0.4, G=0.025),
    ])
    def test_field_is_curl_of_potential(self, field):
        x, y, d = np.array([0.3, -1.2]), np.array([0.7, 2.1]), 1e-5
        ax_py, _, az_py = field.vector_potential(x, y + d)
        ax_my, _, az_my = field.vector_potential(x, y - d)
        _, ay_px, az_px = field.vector_potential(x + d, y)
        _, ay_mx, az_mx = field.vector_potential(x - d, y)
        bx, by, bz = field.magnetic_field(x, y)
        assert np.allclose(bx, (az_py - az_my) / (2 * d), atol=1e-8)
        assert np.allclose(by, -(az_px - az_mx) / (2 * d), atol=1e-8)
        assert np.allclose(bz, (ay_px - ay_mx) / (2 * d) - (ax_py - ax_my) / (2 * d), atol=1e-8)

    def test_current_classification(self):
        assert FieldSpec("uniform_z", B0=0.5).is_current_free
        assert FieldSpec("quadrupole", G=0.125).is_current_free
        sheared = FieldSpec("sheared_z", B0=0.4, G=0.025)
        assert not sheared.is_current_free
        _, jy, _ = sheared.current(np.zeros(2), np.zeros(2))
        assert np.allclose(jy, -0.025)


class TestGridSpec:

    def test_spacing_and_mesh(self):
        grid = GridSpec(24, 4.0)
        assert grid.spacing == pytest.approx(8.0 / 23)
        x, y = grid.mesh()
        assert x.shape == (576,)
        # x is the slow index
        assert x[0] == x[23] == -4.0 and y[1] - y[0] == pytest.approx(grid.spacing)

    def test_too_few_points(self):
        with pytest.raises(GridResolutionError):
            GridSpec(12, 4.0).validate(FieldSpec("uniform_z", B0=0.5), 1.0)

    def test_unresolved_magnetic_length(self):
        with pytest.raises(GridResolutionError, match="magnetic length"):
            GridSpec(16, 4.0).validate(FieldSpec("uniform_z", B0=0.5), 1.0)

    def test_domain_too_small(self):
        with pytest.raises(GridResolutionError, match="domain width"):
            GridSpec(64, 1.0).validate(FieldSpec("uniform_z", B0=0.5), 1.0)

    def test_field_free_grid_is_valid(self):
        GridSpec(16, 1.0).validate(FieldSpec("uniform_z", B0=0.0), 1.0)


class TestOperators:

    def setup_method(self):
        self.grid = GridSpec(24, 4.0)
        self.field = FieldSpec("uniform_z", B0=0.5)

    def test_normal_moment_has_no_even_term(self):
        ops = build_operators(self.field, self.grid, NORMAL)
        assert abs(ops.eE).max() == 0

    def test_dimensions(self):
        ops = build_operators(self.field, self.grid, ANOMALOUS)
        assert ops.h_st.shape == (6 * self.grid.size, 6 * self.grid.size)
        assert ops.orbital.pi2.shape == (self.grid.size, self.grid.size)

    @pytest.mark.parametrize("params", [NORMAL, ANOMALOUS])
    @pytest.mark.parametrize("field", [
        FieldSpec("uniform_z", B0=0.5),
        FieldSpec("quadrupole", G=0.125),
        FieldSpec("sheared_z", B0=0.4, G=0.025),
    ])
    def test_block_structure_and_pseudo_hermiticity(self, field, params):
        ops = build_operators(field, self.grid, params)
        assert max(block_structure_residuals(ops).values()) == 0
        assert pseudo_hermiticity_residual(ops) <= 1e-12

    def test_hermiticity_of_blocks(self):
        ops = build_operators(FieldSpec("quadrupole", G=0.125), self.grid, ANOMALOUS)
        assert abs(ops.mM - ops.mM.conj().T).max() <= 1e-12
        assert abs(ops.eE - ops.eE.conj().T).max() <= 1e-12
        assert abs(ops.oO + ops.oO.conj().T).max() <= 1e-12

    def test_kinetic_momenta_commutator(self):
        grid = GridSpec(64, 6.0)
        ops = build_operators(self.field, grid, NORMAL)
        basis = interior_basis(grid, 3)
        commutator = ops.pi_x @ ops.pi_y - ops.pi_y @ ops.pi_x
        projected = basis.conj().T @ (commutator @ basis)
        assert np.allclose(projected, 1j * 0.5 * np.eye(3), atol=0.03)

    @pytest.mark.parametrize("field", [
        FieldSpec("uniform_z", B0=0.5),
        FieldSpec("quadrupole", G=0.125),
        FieldSpec("sheared_z", B0=0.4, G=0.025),
    ])
    def test_pi2_uses_the_component_stencil(self, field):
        moving = ParticleParams(m=1.0, e=1.0, g=2.0, pz=0.3)
        orbital = orbital_operators(field, self.grid, moving)
        squares = orbital.pi_x @ orbital.pi_x + orbital.pi_y @ orbital.pi_y + orbital.pi_z @ orbital.pi_z
        assert abs(orbital.pi2 - squares).max() <= 1e-14

    def test_compact_pi2_is_positive(self):
        values, _ = lowest_modes(peierls_pi2(self.field, self.grid, NORMAL, transverse=True), 3)
        assert np.all(values > 0)
        assert values[0] == pytest.approx(0.5, rel=0.02)

    def test_unresolved_grid_rejected(self):
        with pytest.raises(GridResolutionError):
            build_operators(self.field, GridSpec(16, 4.0), NORMAL)


class TestNumerics:

    def test_operator_norm(self):
        assert operator_norm(np.diag([3.0, -1.0, 0.5])) == pytest.approx(3.0, rel=1e-10)
        assert operator_norm(np.zeros((3, 3))) == 0

    def test_convergence_order(self):
        spacings = [0.4, 0.2, 0.1]
        assert convergence_order(spacings, [3 * h ** 2 for h in spacings]) == pytest.approx(2.0)
        assert convergence_order(spacings, [1.0, 0.0, 0.0]) == math.inf

    def test_convergence_order_roundoff_floor(self):
        spacings = [0.4, 0.2, 0.1]
        noise = [2e-15, 3e-15, 5e-15]
        assert convergence_order(spacings, noise) < 0
        assert convergence_order(spacings, noise, floor=1e-12) == math.inf

    def test_landau_multiplicities(self):
        values = np.array([0.199, 0.1991, 0.1993, 0.25, 0.31, 0.42, 0.5, 0.597, 0.598, 0.65, 0.7, 0.8, 1.3])
        assert landau_multiplicities(values, 0.2, 0.02) == {0: 3, 1: 2}
        assert landau_multiplicities(values, 0.2, 0.02, lowest=7) == {0: 3}

    def test_landau_multiplicities_need_enough_values(self):
        with pytest.raises(GridResolutionError):
            landau_multiplicities(np.full(5, 0.2), 0.2, 0.02)

    def test_refinement_study(self):
        grids = [GridSpec(n, 4.0) for n in (24, 32, 48)]
        study = refinement_study(lambda grid: grid.spacing ** 1.5, grids)
        assert study.n_points == (24, 32, 48)
        assert study.order == pytest.approx(1.5)
        assert study.monotone

    def test_landau_level_estimates(self):
        edge = np.linspace(0.25, 0.55, 7)
        bulk = np.concatenate([np.full(8, 0.199), np.full(8, 0.597), np.full(8, 0.995)])
        estimates = landau_level_estimates(np.concatenate([edge, bulk]), 0.2)
        assert np.allclose(estimates, [0.199, 0.597, 0.995])

    def test_unresolved_landau_level(self):
        with pytest.raises(GridResolutionError):
            landau_level_estimates(np.full(10, 0.2), 0.2)


class TestPreconditions:

    def setup_method(self):
        self.grid = GridSpec(24, 4.0)

    def test_commutator_requires_g2(self):
        with pytest.raises(GFactorError):
            commutator_mo_residual(FieldSpec("uniform_z", B0=0.5), self.grid, ANOMALOUS)

    def test_identity_requires_current_free_field(self):
        with pytest.raises(UnsupportedFieldError):
            exact_fw_identity_residual(FieldSpec("sheared_z", B0=0.4, G=0.025), self.grid, NORMAL)

    def test_landau_requires_uniform_field(self):
        with pytest.raises(UnsupportedFieldError):
            landau_spectrum_grid(FieldSpec("quadrupole", G=0.125), self.grid, NORMAL)

    def test_projections_require_uniform_field(self):
        with pytest.raises(UnsupportedFieldError):
            conserved_projection_residuals(FieldSpec("quadrupole", G=0.125), self.grid, NORMAL)

    def test_projections_limit_dense_size(self):
        with pytest.raises(GridResolutionError):
            conserved_projection_residuals(FieldSpec("uniform_z", B0=0.5), GridSpec(64, 4.0), NORMAL)


class TestInteriorBasis:

    def setup_method(self):
        self.grid = GridSpec(32, 12.0)

    def test_orthonormal(self):
        basis = interior_basis(self.grid)
        assert basis.shape == (self.grid.size, 10)
        assert np.allclose(basis.conj().T @ basis, np.eye(10), atol=1e-12)

    def test_vanishes_at_the_walls(self):
        basis = interior_basis(self.grid)
        x, y = self.grid.mesh()
        edge = (np.abs(x) == self.grid.extent) | (np.abs(y) == self.grid.extent)
        assert np.max(np.abs(basis[edge])) <= 1e-4 * np.max(np.abs(basis))

    def test_ground_function_has_one_sign(self):
        ground = interior_basis(self.grid, 1)[:, 0]
        assert np.all(ground > 0) or np.all(ground < 0)

    def test_too_many_functions(self):
        with pytest.raises(GridResolutionError):
            interior_basis(GridSpec(16, 1.0), 300)


class TestConfiguredGrids:

    def setup_method(self):
        self.section = load_config(CONFIG_PATH)["verify"]["grid"]

    def test_refinement_grids_resolve_every_field(self):
        section = self.section
        fields = [
            FieldSpec("uniform_z", B0=section["uniform"]["B0"]),
            FieldSpec("quadrupole", G=section["quadrupole"]["G"]),
            FieldSpec("sheared_z", B0=section["sheared"]["B0"], G=section["sheared"]["G"]),
        ]
        for n in section["grids"]:
            for field in fields:
                GridSpec(n, section["extent"]).validate(field, section["e"])

    def test_projection_grids_resolve_the_uniform_field(self):
        field = FieldSpec("uniform_z", B0=self.section["uniform"]["B0"])
        for n in self.section["projection_grids"]:
            GridSpec(n, self.section["extent"]).validate(field, self.section["e"])

    def test_landau_grids_resolve_the_field(self):
        landau = self.section["landau"]
        field = FieldSpec("uniform_z", B0=landau["eB"] / abs(self.section["e"]))
        for n in [landau["n_points"]] + landau["refinement"]:
            GridSpec(n, landau["extent"]).validate(field, self.section["e"])

    def test_dense_grids_fit_the_square_root(self):
        assert max(self.section["projection_grids"]) <= 48


class TestExactness:

    def setup_method(self):
        section = load_config(CONFIG_PATH)["verify"]["grid"]
        self.grids = [GridSpec(n, section["extent"]) for n in section["projection_grids"]]
        self.uniform = FieldSpec("uniform_z", B0=section["uniform"]["B0"])
        self.quadrupole = FieldSpec("quadrupole", G=section["quadrupole"]["G"])

    @pytest.mark.parametrize("pz", [0.0, 0.3])
    @pytest.mark.parametrize("grid", [GridSpec(24, 4.0), GridSpec(32, 12.0)])
    def test_field_free_identity_is_exact(self, grid, pz):
        params = ParticleParams(m=1.0, e=1.0, g=2.0, pz=pz)
        result = exact_fw_identity_residual(FieldSpec("uniform_z"), grid, params)
        assert result.residual <= 1e-10 * result.scale

    def test_field_free_commutator_vanishes(self):
        assert commutator_mo_residual(FieldSpec("uniform_z"), GridSpec(32, 12.0), NORMAL).direct_norm <= 1e-12

    def test_uniform_commutator_converges(self):
        study = refinement_study(
            lambda grid: commutator_mo_residual(self.uniform, grid, NORMAL, k=3).direct_norm, self.grids, 1e-12)
        assert study.monotone
        assert study.order >= 1.5

    def test_uniform_identity_converges(self):
        identities = [exact_fw_identity_residual(self.uniform, grid, NORMAL, k=3) for grid in self.grids]
        residuals = [r.residual for r in identities]
        assert all(b < a for a, b in zip(residuals, residuals[1:]))
        assert convergence_order([grid.spacing for grid in self.grids], residuals, 1e-12) >= 1.5
        assert identities[-1].residual <= 1e-2 * identities[-1].scale

    def test_quadrupole_commutator_converges(self):
        study = refinement_study(
            lambda grid: commutator_mo_residual(self.quadrupole, grid, NORMAL, k=3).direct_norm, self.grids, 1e-12)
        assert study.monotone
        assert study.order >= 1.5


class TestLandauLevels:

    def test_lowest_twelve_share_the_ground_level(self):
        values = landau_spectrum_grid(FieldSpec("uniform_z", B0=0.2), GridSpec(64, 15.0), NORMAL)
        assert values.size == 12
        counts = landau_multiplicities(values, 0.2, 0.02)
        assert counts[0] >= 2
        assert min(counts.values()) >= 2


@pytest.mark.slow
class TestRefinement:

    def setup_method(self):
        self.section = load_config(CONFIG_PATH)["verify"]["grid"]
        self.grids = [GridSpec(n, self.section["extent"]) for n in self.section["grids"]]

    def test_quadrupole_commutator_vanishes(self):
        field = FieldSpec("quadrupole", G=self.section["quadrupole"]["G"])
        study = refinement_study(lambda grid: commutator_mo_residual(field, grid, NORMAL).direct_norm, self.grids)
        assert study.order >= 1.5

    def test_sheared_commutator_matches_formula(self):
        sheared = self.section["sheared"]
        field = FieldSpec("sheared_z", B0=sheared["B0"], G=sheared["G"])
        results = [commutator_mo_residual(field, grid, NORMAL) for grid in self.grids]
        assert results[-1].direct_norm >= 0.5 * results[0].direct_norm
        gaps = [r.relative_gap for r in results]
        assert convergence_order([grid.spacing for grid in self.grids], gaps) >= 1.5

    @pytest.mark.parametrize("kind", ["uniform", "quadrupole"])
    def test_identity(self, kind):
        field = FieldSpec("uniform_z", B0=self.section["uniform"]["B0"]) if kind == "uniform" \
            else FieldSpec("quadrupole", G=self.section["quadrupole"]["G"])
        identities = [exact_fw_identity_residual(field, grid, NORMAL) for grid in self.grids]
        assert identities[-1].residual <= 1e-2 * identities[-1].scale
        order = convergence_order([grid.spacing for grid in self.grids], [r.residual for r in identities])
        assert order >= 1.5


@pytest.mark.slow
class TestUniformField:

    def test_landau_levels(self):
        values = landau_spectrum_grid(FieldSpec("uniform_z", B0=0.2), GridSpec(64, 15.0), NORMAL, k=160)
        estimates = landau_level_estimates(values, 0.2)
        assert np.allclose(estimates, [0.2, 0.6, 1.0], rtol=0.02)

    def test_landau_refinement(self):
        field = FieldSpec("uniform_z", B0=0.2)
        grids = [GridSpec(n, 15.0) for n in (64, 96, 128)]
        study = refinement_study(
            lambda grid: abs(landau_spectrum_grid(field, grid, NORMAL, k=1)[0] - 0.2) / 0.2, grids)
        assert study.monotone
        assert study.order >= 1.8

    def test_gauge_shift(self):
        assert gauge_shift_residual(GridSpec(48, 12.0), NORMAL, 0.1, 0.7) <= 1e-10

    def test_conserved_projections(self):
        moving = ParticleParams(m=1.0, e=1.0, g=2.0, pz=0.3)
        field = FieldSpec("uniform_z", B0=0.1)
        grids = [GridSpec(n, 12.0) for n in (32, 40, 48)]
        results = [conserved_projection_residuals(field, grid, moving) for grid in grids]
        assert all(r.residuals["pi_z"] <= 1e-10 * r.scale for r in results)
        spacings = [grid.spacing for grid in grids]
        for name in ("pi_cross_b", "b_cross_pi_cross_b", "pi_dot_pi", "binormal"):
            series = [r.residuals[name] for r in results]
            assert all(b < a for a, b in zip(series, series[1:])), name
            assert convergence_order(spacings, series) >= 1.0, name
