from ._dynamics import (
    INITIAL_STATES,
    SpinState,
    PolarizationRecord,
    BeatResult,
    TransferSeries,
    make_initial_state,
    evolve,
    beat_analysis,
    tensor_vector_transfer,
    stationary_check,
)
