"""Exception types raised across the package.

Every error derives from :class:`AmoebaError` so callers (the CLI in
particular) can catch numerical failures in one place.
"""


class AmoebaError(Exception):
    """Base class for all package errors."""


class DomainError(AmoebaError, ValueError):
    """An argument lies outside the domain of the requested function."""


class DivergentIntegral(DomainError):
    pass


class UnsupportedCase(DomainError):
    pass


class ModulusOutOfRange(DomainError):
    pass


class BadOrdering(DomainError):
    pass


class PoleOnInterval(DomainError):
    pass


class BadParameter(DomainError):
    pass


class OutOfConvergenceRegion(DomainError):
    pass


class UndefinedAt(DomainError):
    pass


class OutOfRange(DomainError):
    pass


class BadCoefficients(DomainError):
    pass


class NotInChamber(DomainError):
    pass


class BoxTooSmall(DomainError):
    pass


class ToleranceNotMet(AmoebaError, RuntimeError):
    """A quadrature could not reach the requested accuracy."""
