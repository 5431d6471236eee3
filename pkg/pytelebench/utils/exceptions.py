"""
Exception hierarchy shared by every pytelebench module.

The CLI maps these onto exit codes: DomainError -> 1, ValidationFailure -> 2,
NumericalError (and subclasses) -> 3.
"""


class BenchmarkError(Exception):
    """Base class for all pytelebench errors."""


class DomainError(BenchmarkError, ValueError):
    """A parameter lies outside the domain the model can represent."""


class NumericalError(BenchmarkError, ArithmeticError):
    """A numerical routine left its regime of validity."""


class QuadratureError(NumericalError):
    """Adaptive quadrature stopped before reaching the requested tolerance."""

    def __init__(self, message: str, estimate: float, error_estimate: float):
        super().__init__(
            f"{message} (estimate={estimate!r}, error estimate={error_estimate:.3e})"
        )
        self.estimate = estimate
        self.error_estimate = error_estimate


class SeriesStabilityError(NumericalError):
    """The nested-sum evaluation was asked for a parameter range where it cancels."""


class ValidationFailure(BenchmarkError):
    """At least one Monte Carlo cell disagreed with its analytic value."""
