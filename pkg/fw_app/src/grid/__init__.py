from ._fields import (
    FIELD_KINDS,
    FieldSpec,
    GridSpec,
)
from ._operators import (
    OrbitalOperators,
    GridOperatorSet,
    orbital_operators,
    peierls_pi2,
    field_operators,
    spin_kron,
    rho_kron,
    build_operators,
)
from ._checks import (
    INTERIOR_MODES,
    LANDAU_LOWEST,
    CommutatorResidual,
    IdentityResidual,
    ProjectionResiduals,
    RefinementStudy,
    operator_norm,
    convergence_order,
    lowest_modes,
    interior_basis,
    commutator_mo_residual,
    exact_fw_identity_residual,
    landau_spectrum_grid,
    landau_level_estimates,
    landau_multiplicities,
    gauge_shift_residual,
    block_structure_residuals,
    pseudo_hermiticity_residual,
    conserved_projection_residuals,
    refinement_study,
)
