"""Exception hierarchy shared across the package."""


class PrimeDensityError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(PrimeDensityError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class CapacityError(PrimeDensityError):
    """A request exceeds a configured resource or exactness limit."""


class PoleError(DomainError):
    """An estimator was evaluated at (or past) a pole of its formula."""


class FitSingularError(PrimeDensityError):
    """Damped normal equations stayed unsolvable up to the damping ceiling."""
