"""Exception types raised across the package."""


class RingMismatchError(ValueError):
    """Operands live in different polynomial rings."""


class NotInBracketPowerError(ValueError):
    """A polynomial is not a member of the requested bracket power."""


class LevelBoundExceeded(RuntimeError):
    """The level loop ran past its theoretical bound (indicates a bug)."""


class VerificationError(RuntimeError):
    """A constructed operator failed its own defining identity."""


class UnsupportedLevelError(ValueError):
    """The requested construction only exists at level one."""


class SingularCurveError(ValueError):
    """The cubic does not define a smooth plane curve."""


class ConsistencyError(RuntimeError):
    """Independent classification signals disagree."""


class ParseError(ValueError):
    """Malformed polynomial or operator text."""

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position
