from ._commands import (
    SPECTRUM_COLUMNS,
    EVOLVE_COLUMNS,
    EXIT_OK,
    EXIT_VERIFICATION_FAILED,
    spectrum_rows,
    run_spectrum,
    stationary_payload,
    run_stationary,
    evolve_rows,
    run_evolve,
    run_verify,
    execute,
)
