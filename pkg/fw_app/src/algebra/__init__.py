from ._algebra import (
    HERMITIAN_RTOL,
    SpinOperatorSet,
    build_spin_matrices,
    rho_matrices,
    polarization_operator,
    commutator,
    anticommutator,
    is_hermitian,
    eig_hermitian,
    sqrt_psd,
    exp_unitary,
    expectation,
)
