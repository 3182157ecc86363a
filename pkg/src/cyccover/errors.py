"""Exception types shared across the package.

Precondition failures derive from :class:`PreconditionError`; resource
limits derive from :class:`ResourceError`.  The CLI maps the two families to
exit codes 2 and 3.
"""


class CycCoverError(Exception):
    """Base class for all package errors."""


class PreconditionError(CycCoverError, ValueError):
    pass


class ResourceError(CycCoverError, RuntimeError):
    pass


# gf / polyring
class NonPrime(PreconditionError):
    pass


class DegreeZero(PreconditionError):
    pass


class FieldMismatch(PreconditionError):
    pass


class DivisionByZero(PreconditionError, ZeroDivisionError):
    pass


class ZeroElement(PreconditionError):
    pass


class DivisorZero(PreconditionError, ZeroDivisionError):
    pass


# cyclo
class NotCoprime(PreconditionError):
    pass


class CoefficientEscape(CycCoverError, ArithmeticError):
    """An expanded minimal polynomial has a coefficient outside GF(q).

    This can only happen through an internal bug.
    """


# linalg
class DimensionMismatch(PreconditionError):
    pass


class NotDirect(PreconditionError):
    pass


# cover / construct
class BudgetExceeded(ResourceError):
    def __init__(self, message, band=None):
        super().__init__(message)
        self.band = band


class NotCovering(PreconditionError):
    pass


class BadN(PreconditionError):
    pass


class BadDivisor(PreconditionError):
    pass


class PreconditionC(PreconditionError):
    pass


class PreconditionGcd(PreconditionError):
    pass


# groups / isbell
class NotInvertible(PreconditionError):
    pass


class CapExceeded(ResourceError):
    pass


class CharDivides(PreconditionError):
    pass


class NotInvariant(PreconditionError):
    pass


class NotDecomposition(PreconditionError):
    pass


class ParseError(PreconditionError):
    pass
