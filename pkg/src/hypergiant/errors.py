"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class EstimationError(RuntimeError):
    """A Monte Carlo estimator could not produce a meaningful result."""
