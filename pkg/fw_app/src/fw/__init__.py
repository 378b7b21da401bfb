from ._normal import (
    ClosedFormCoeffs,
    a_coefficients,
    energy_g2,
    exact_energy,
    closed_form_matrix,
    square_root_matrix,
    closed_form_residual,
    richardson,
    SmallBExpansion,
    small_b_expansion,
)
from ._amm import (
    H0_POLICIES,
    ReducedHamiltonian,
    StationaryTriplet,
    PolarizationObservables,
    particle_at_rest,
    frequencies,
    beta_parameters,
    reduced_hamiltonian,
    stationary_states,
    polarization_expectations,
    hamiltonian_full_sector,
    amm_reference,
    amm_eigenvalue_gap,
    amm_scaling_exponent,
    polarizability_identity_residual_scalar,
    substitution_map,
    sector_energies_reduced,
)
