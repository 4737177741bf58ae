"""Exception hierarchy shared by every module."""


class VdcError(ValueError):
    """Base class for all errors raised by vdcorput."""


class DomainError(VdcError):
    """An argument lies outside the mathematical domain of an operation."""


class InvalidWindowError(DomainError):
    """A summation window with non-positive length."""


class HypothesisViolation(VdcError):
    """A theorem hypothesis (precondition of a bound) does not hold."""


class ResourceError(VdcError):
    """A desk-scale cap on direct summation was exceeded."""
