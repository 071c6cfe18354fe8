# errors.py
from __future__ import annotations


class KaehlerError(Exception):
    """Base class for every computation or input error raised by the library."""


# coefficients / polynomials
class InvalidField(KaehlerError, ValueError):
    pass


class InvalidParameter(KaehlerError, ValueError):
    """A numeric argument outside the range an operation accepts."""


class DivisionByZero(KaehlerError, ZeroDivisionError):
    pass


class RingMismatch(KaehlerError):
    pass


class DegreeTooSmall(KaehlerError):
    pass


class NonHomogeneousInput(KaehlerError):
    pass


# hilbert
class StabilizationViolated(KaehlerError):
    pass


class NotZeroDimensional(KaehlerError):
    pass


class InfiniteDimensional(KaehlerError):
    pass


# kaehler
class FormDegreeOutOfRange(KaehlerError):
    pass


class NonzeroConstantTerm(KaehlerError):
    pass


class InternalInconsistency(KaehlerError):
    pass


# schemes
class PointAtInfinity(KaehlerError):
    pass


class X0ZeroDivisor(KaehlerError):
    pass


class DuplicatePoint(KaehlerError):
    pass


class UnsupportedScheme(KaehlerError):
    pass


class ProfileUnavailable(KaehlerError):
    pass


# formulas
class CharTooSmall(KaehlerError):
    pass


# io
class PolynomialSyntaxError(KaehlerError):
    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class UnknownVariable(KaehlerError):
    pass


class WrongRing(KaehlerError):
    pass


class SchemeFileError(KaehlerError):
    pass


class VerificationFailed(KaehlerError):
    def __init__(self, message: str, failures: list | None = None):
        self.failures = failures or []
        super().__init__(message)
