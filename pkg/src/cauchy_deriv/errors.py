class CauchyError(Exception):
    """Base class for errors raised by this package."""


class EvaluationError(CauchyError, ArithmeticError):
    """A function evaluation produced a non-finite value or hit a singularity."""


class DomainError(CauchyError, ValueError):
    """An argument lies outside the admissible domain (radius, branch, ...)."""


class ConvergenceError(CauchyError, RuntimeError):
    """An iterative solver did not converge; ``last`` holds the final iterate."""

    def __init__(self, message, last=None):
        super().__init__(message)
        self.last = last
