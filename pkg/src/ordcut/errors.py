"""Exception hierarchy shared by every ordcut module."""


class OrdcutError(Exception):
    """Base class; ``name`` is what the CLI reports."""

    @property
    def name(self):
        return type(self).__name__


class GroupMismatch(OrdcutError):
    pass


class InvalidLevel(OrdcutError):
    pass


class InvalidPivot(OrdcutError):
    pass


class InvalidCut(OrdcutError):
    pass


class NotDedekind(OrdcutError):
    pass


class NotCoarseEnough(OrdcutError):
    pass


class TrivialQuotient(OrdcutError):
    pass


class NotInRing(OrdcutError):
    pass


class InfinitePrecisionRequested(OrdcutError):
    pass


class InsufficientPrecision(OrdcutError):
    pass


class CutNotPositive(OrdcutError):
    pass


class NotPositiveElement(OrdcutError):
    pass


class FiniteSequence(OrdcutError):
    pass


class NotIncreasing(OrdcutError):
    pass


class InvalidSequence(OrdcutError):
    pass


class DivisionByZero(OrdcutError, ZeroDivisionError):
    pass
