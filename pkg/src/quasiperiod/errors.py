"""Exception types raised across the package."""

from __future__ import annotations


class QuasiPeriodError(Exception):
    """Base class for every error raised by this package."""


# arrangement model
class ZeroHyperplane(QuasiPeriodError, ValueError):
    pass


class DimensionMismatch(QuasiPeriodError, ValueError):
    pass


class IndexOutOfRange(QuasiPeriodError, IndexError):
    pass


class NoUnitCoefficient(QuasiPeriodError, ValueError):
    pass


class FormatError(QuasiPeriodError, ValueError):
    """Malformed arrangement text or JSON."""


# counting
class BudgetExceeded(QuasiPeriodError, RuntimeError):
    pass


# polynomial algebra
class NonIntegralCoefficients(QuasiPeriodError, ArithmeticError):
    pass


class VerificationFailed(QuasiPeriodError, ArithmeticError):
    def __init__(self, q: int, expected: int, got: int):
        super().__init__(f"count at q={q} is {got}, fitted quasi-polynomial predicts {expected}")
        self.q = q
        self.expected = expected
        self.got = got


class InvalidRange(QuasiPeriodError, ValueError):
    pass


# periods
class SubsetCapExceeded(QuasiPeriodError, RuntimeError):
    pass


# Shi arrangement of type B
class BadDimension(QuasiPeriodError, ValueError):
    pass


class InvalidIndices(QuasiPeriodError, ValueError):
    pass


class NotParallel(QuasiPeriodError, ValueError):
    pass


# box bijection
class InvariantViolation(QuasiPeriodError, ValueError):
    pass


class NotInComplement(QuasiPeriodError, ValueError):
    pass


# CLI expression grammar
class ParseError(QuasiPeriodError, ValueError):
    pass


class OrientationError(QuasiPeriodError, ValueError):
    pass
