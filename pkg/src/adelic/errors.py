"""Exception hierarchy shared by every module of the package."""


class AdelicError(Exception):
    """Base class for all domain errors raised by :mod:`adelic`."""


class PrimeMismatch(AdelicError):
    pass


class DivisionByZero(AdelicError, ZeroDivisionError):
    pass


class PrecisionExhausted(AdelicError):
    """Raised when a question cannot be decided at the available precision.

    This is never used to mean "no": callers can always distinguish an
    undecidable case from a negative answer.
    """


class DomainViolation(AdelicError, ValueError):
    pass


class InvalidResidue(AdelicError, ValueError):
    pass


class InvalidPolynomial(AdelicError, ValueError):
    pass


class Unsupported(AdelicError):
    pass


class FieldMismatch(AdelicError):
    pass


class NonUnitDivisor(AdelicError):
    pass


class NotFertile(AdelicError):
    pass


class UnsupportedDescriptor(AdelicError):
    pass
