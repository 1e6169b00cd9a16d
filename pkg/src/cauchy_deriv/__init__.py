"""Taylor coefficients and high-order derivatives from Cauchy integrals on circles."""

from .driver import DriverConfig, derivative, digit_loss_estimate, taylor_coefficient
from .errors import CauchyError, ConvergenceError, DomainError, EvaluationError
from .quad import (AnalyticFunction, QuadratureOutcome, SampleRing, Status,
                   discrete_condition_number, mean_modulus, reference_condition_number,
                   sample_ring, trapezoidal_coefficient)
from .scaled import ScaledComplex

__version__ = "0.1.0"
