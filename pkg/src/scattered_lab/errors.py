"""Exception hierarchy shared by every module."""


class ScatteredLabError(Exception):
    """Base class for all library errors."""


class ParameterError(ScatteredLabError, ValueError):
    """Invalid input parameters (maps to CLI exit code 3)."""


class NonPrime(ParameterError):
    pass


class Reducible(ParameterError):
    pass


class SizeLimitExceeded(ParameterError):
    pass


class DivisionByZero(ScatteredLabError, ZeroDivisionError):
    pass


class NotADivisor(ParameterError):
    pass


class FieldMismatch(ParameterError):
    pass


class ZeroMap(ParameterError):
    pass


class GcdViolation(ParameterError):
    pass


class NormCondition(ParameterError):
    pass


class BadDegree(ParameterError):
    pass


class BadResidue(ParameterError):
    pass


class BadParameter(ParameterError):
    pass


class NotSameLinearSet(ParameterError):
    pass


class DegenerateSubspace(ParameterError):
    pass


class DegenerateCode(ParameterError):
    pass


class DependentBasis(ParameterError):
    pass


class BudgetExceeded(ScatteredLabError):
    """A scan stopped at its work cap; ``token`` resumes it."""

    def __init__(self, token: str, scanned: int, total: int):
        super().__init__(f"budget exhausted after {scanned}/{total} candidates; resume with {token!r}")
        self.token = token
        self.scanned = scanned
        self.total = total


class ConsistencyError(ScatteredLabError, AssertionError):
    """Two independent computation paths disagreed."""
