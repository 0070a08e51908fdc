"""Exception and warning types shared across the package."""


class FanoChainError(Exception):
    """Base class for all errors raised by this package."""


class SingularityError(FanoChainError):
    """A coupling envelope was evaluated at (or too close to) one of its poles."""


class DomainError(FanoChainError, ValueError):
    """An argument lies outside the domain an operation is defined on."""


class DivergenceError(FanoChainError):
    """An integral does not converge for the given envelope."""


class WindowTooSmallError(FanoChainError):
    """The analytic tail bound exceeds the requested tolerance for this window."""


class InvalidContourError(FanoChainError):
    """A pole lies on or below the requested integration contour."""


class ConfigurationError(FanoChainError, ValueError):
    """A configuration violates one of its invariants.

    ``field`` carries a dotted path into the offending config when known.
    """

    def __init__(self, message, field=None):
        self.field = field
        super().__init__(f"{field}: {message}" if field else message)


class InstabilityError(FanoChainError):
    """The integrated state grew beyond the overflow guard (norm > 1e6)."""


class EdgeTruncationWarning(UserWarning):
    """Sampled data does not decay at the grid edges as the method assumes."""


class AccuracyWarning(UserWarning):
    """A result is returned but its accuracy may be degraded."""
