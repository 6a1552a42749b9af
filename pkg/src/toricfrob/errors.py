"""Shared exception types."""


class ToricFrobError(Exception):
    """Base class for all package errors."""


class NotStronglyConvex(ToricFrobError):
    pass


class Unbounded(ToricFrobError):
    pass


class DimensionMismatch(ToricFrobError):
    pass


class DegenerateRelation(ToricFrobError):
    pass


class MalformedFan(ToricFrobError):
    pass


class RayExists(ToricFrobError):
    pass


class OutsideSupport(ToricFrobError):
    pass


class NotDivisorial(ToricFrobError):
    pass


class InvalidContraction(ToricFrobError):
    pass


class NotARelation(ToricFrobError):
    pass


class RequiresSmooth(ToricFrobError):
    pass


class RequiresRankTwo(ToricFrobError):
    pass


class UnmatchedRay(ToricFrobError):
    pass


class NotInert(ToricFrobError):
    pass


class ChainStuck(ToricFrobError):
    pass


class BudgetExceeded(ToricFrobError):
    pass


class UnknownName(ToricFrobError):
    pass


class ParseError(ToricFrobError):
    pass


class ValidationError(ToricFrobError):
    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics
