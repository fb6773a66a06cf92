"""Exception types shared across the package."""


class InvalidParameterError(ValueError):
    """Parameters outside the validity region of a distribution family."""


class DomainError(ValueError):
    """Evaluation point outside the domain of an operation."""


class NotUnimodalError(DomainError):
    """Mode requested for a parameter set without a unimodal density."""


class QuadratureError(RuntimeError):
    """Numerical integration failed to reach the requested accuracy."""

    def __init__(self, message, estimate=None):
        super().__init__(message)
        self.estimate = estimate


class NonConvergenceError(RuntimeError):
    """An iterative scheme (inversion, extrapolation, root polish) failed."""
