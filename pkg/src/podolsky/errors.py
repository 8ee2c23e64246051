"""Exception hierarchy shared by every module."""


class PodolskyError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(PodolskyError, ValueError):
    """An argument lies outside the domain of the operation."""


class DivergenceError(DomainError):
    """The function diverges at the requested point (e.g. K0 at x = 0)."""


class BesselOverflowError(PodolskyError, OverflowError):
    """An unscaled Bessel value exceeds the float range; use the scaled variant."""


class EstimatorError(DomainError):
    """The asymptotic inversion has no positive solution for these inputs."""


class ConvergenceError(PodolskyError, ArithmeticError):
    """A numerical procedure did not reach its tolerance.

    ``achieved`` carries the best error estimate obtained.
    """

    def __init__(self, message, achieved=None):
        super().__init__(message)
        self.achieved = achieved


class ModelError(PodolskyError):
    """The variational model has no admissible minimum."""
