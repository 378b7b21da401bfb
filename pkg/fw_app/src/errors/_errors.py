"""Module provides the exceptions raised by the toolkit."""


class FWError(Exception):
    """Base class of every error raised by the toolkit."""
    exit_code: int = 2


class ConfigurationError(FWError):
    """Invalid command-line flags, config file values or run selections."""


class DimensionMismatchError(FWError):
    """Operands of a matrix operation have different shapes."""


class NotHermitianError(FWError):
    """A matrix expected to be Hermitian is not within tolerance."""


class NotPositiveDefiniteError(FWError):
    """A matrix expected to be positive definite has a non-positive eigenvalue."""
    def __init__(self, min_eigenvalue: float):
        """
        Initialize an instance.
        :param min_eigenvalue: the offending minimum eigenvalue.
        """
        super(NotPositiveDefiniteError, self).__init__(
            "matrix is not positive definite, minimum eigenvalue {!r}".format(min_eigenvalue)
        )
        self.min_eigenvalue = min_eigenvalue


class SupercriticalFieldError(FWError):
    """The field is too strong for a real square root in some sector."""


class SectorUndefinedError(FWError):
    """Landau sectors do not exist without a field."""


class NeutralParticleError(FWError):
    """A zero charge makes the Landau bookkeeping meaningless."""


class GFactorError(FWError):
    """The operation is only defined for a particular g factor."""


class UnnormalizedStateError(FWError):
    """A spin state does not have unit norm."""


class InsufficientSpanError(FWError):
    """A time series is too short or not uniformly sampled for frequency extraction."""


class FitConvergenceError(FWError):
    """The frequency fit did not converge."""


class GridResolutionError(FWError):
    """The lattice does not resolve the magnetic length or is too small."""


class UnsupportedFieldError(FWError):
    """The field configuration is not supported by the requested check."""
