"""Exception types raised across the package."""


class PermTriError(Exception):
    """Base class for all package errors."""


class ReducibleModulus(PermTriError):
    pass


class DegreeMismatch(PermTriError):
    pass


class DivisionByZero(PermTriError, ZeroDivisionError):
    pass


class DegenerateEquation(PermTriError):
    pass


class BadTrace(PermTriError):
    pass


class NotOnMu(PermTriError):
    """Raised when an argument is expected to be a (q+1)-th root of unity."""


class BadDivisor(PermTriError):
    pass


class ZeroCoefficient(PermTriError):
    """alpha or beta is zero."""


class NonTerminating(PermTriError):
    """A rewriting rule would not reach a fixpoint."""


class ZeroDegree(PermTriError):
    pass


class ZeroLeadingCoefficient(PermTriError):
    pass


class InexactDivision(PermTriError):
    pass


class ParseError(PermTriError, ValueError):
    pass


class ResourceLimit(PermTriError):
    pass
