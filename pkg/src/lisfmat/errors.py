"""Exception hierarchy shared by every module."""


class LisfError(Exception):
    """Base class for all library errors."""


class FieldMismatch(LisfError):
    pass


class DimensionMismatch(LisfError):
    pass


class DivisionByZero(LisfError, ZeroDivisionError):
    pass


class ZeroSubspace(LisfError):
    pass


class ZeroScale(LisfError):
    pass


class NotInvertible(LisfError):
    pass


class GroundTooLarge(LisfError):
    pass


class NotDownwardClosed(LisfError):
    pass


class HypothesesNotMet(LisfError):
    pass


class ParamError(LisfError):
    pass


class ParseError(LisfError):
    pass


class BudgetExceeded(LisfError):
    """A LISF decision needs more selections than the configured budget.

    ``labels`` names the offending subfamily when known.
    """

    def __init__(self, message, labels=None):
        super().__init__(message)
        self.labels = labels
