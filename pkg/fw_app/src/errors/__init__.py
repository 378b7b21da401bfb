from ._errors import (
    FWError,
    ConfigurationError,
    DimensionMismatchError,
    NotHermitianError,
    NotPositiveDefiniteError,
    SupercriticalFieldError,
    SectorUndefinedError,
    NeutralParticleError,
    GFactorError,
    UnnormalizedStateError,
    InsufficientSpanError,
    FitConvergenceError,
    GridResolutionError,
    UnsupportedFieldError,
)
