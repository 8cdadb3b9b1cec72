"""Exception and warning types."""


class KerrsqError(Exception):
    """Base class for errors raised by this package."""


class ConfigError(KerrsqError, ValueError):
    """Invalid run configuration or usage."""


class NumericFailure(KerrsqError, ArithmeticError):
    """Numeric quadrature did not reach its tolerance.

    ``estimate`` holds the achieved absolute error estimate.
    """

    def __init__(self, message: str, estimate: float = float("nan")):
        super().__init__(message)
        self.estimate = estimate


class DegenerateInputError(KerrsqError, ValueError):
    """The optimal phase is undefined because every phase is optimal."""


class TruncationError(KerrsqError, ArithmeticError):
    """A Fock-space result is dominated by the photon-number cutoff."""


class RegimeWarning(UserWarning):
    """Inputs lie outside the validity regime of the truncated theory."""
