"""Exception hierarchy shared by all zonekit modules."""


class ZonekitError(Exception):
    """Base class for all errors raised by zonekit."""


class DomainError(ZonekitError):
    """An argument is outside the mathematical domain of the operation."""


class ValidationError(ZonekitError):
    """A composite input (site set, grid, tuple, config) is structurally invalid."""


class UnsupportedNormOperation(ZonekitError):
    """The operation requires a norm property (e.g. smoothness) the spec lacks."""


class InternalInvariantError(ZonekitError):
    """A monotonicity or ordering invariant broke mid-iteration.

    This signals a bug in the distance machinery, not bad user input.
    """


class NotConvergedError(ZonekitError):
    """An iteration hit its step budget before reaching a stationary tuple.

    The partial result, when available, is attached as ``.partial``.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class DemonstrationFailedError(ZonekitError):
    """A non-uniqueness demonstration did not meet its advertised guarantees."""


class ConfigError(ZonekitError):
    """A run configuration failed to parse or validate."""
