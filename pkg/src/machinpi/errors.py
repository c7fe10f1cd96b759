"""Exception types shared across the package."""


class MachinPiError(Exception):
    """Base class for errors raised by this package."""


class DomainError(MachinPiError, ValueError):
    """An argument is outside the mathematical domain of an operation."""


class ParseError(MachinPiError, ValueError):
    """A decimal or rational string does not match the accepted grammar."""


class PrecisionError(MachinPiError):
    """The requested precision is too low for the operation to be meaningful."""


class SizeLimitError(MachinPiError):
    """An exact computation would exceed the configured size cap."""


class DivergenceError(MachinPiError):
    """An iterative solver failed to make progress.

    Carries the last observed residual as ``residual`` when available.
    """

    def __init__(self, message: str, residual=None):
        super().__init__(message)
        self.residual = residual


class IntegrityError(MachinPiError):
    """A self-check or reference-data validation failed."""
