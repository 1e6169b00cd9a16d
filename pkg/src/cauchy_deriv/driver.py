"""Adaptive node doubling for a single Taylor coefficient or derivative."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .errors import DomainError
from .quad import (AnalyticFunction, QuadratureOutcome, Status, discrete_condition_number,
                   mean_modulus, sample_ring, trapezoidal_coefficient)
from .scaled import ScaledComplex


@dataclass(frozen=True)
class DriverConfig:
    """Settings of the doubling loop.

    ``tol`` is the relative accuracy of the function values; the loop stops
    once the extrapolated error drops below ``kappa_m * tol``.
    """

    tol: float = 1e-15
    m_initial_floor: int = 8
    m_max: int = 2 ** 20
    scale_to_derivative: bool = False

    def __post_init__(self):
        if not self.tol > 0:
            raise ValueError("tol must be positive")
        if self.m_initial_floor < 1 or self.m_max < 1:
            raise ValueError("node counts must be positive")

    def m_initial(self, n: int) -> int:
        return max(n + 1, self.m_initial_floor)


def _radius_of(plan) -> float:
    return float(getattr(plan, "radius", plan))


def _relative_change(val: ScaledComplex, prev: ScaledComplex, scale: ScaledComplex) -> float:
    if val.is_zero() and prev.is_zero():
        return 0.0
    diff = val - prev
    if diff.is_zero():
        return 0.0
    # near-zero value (e.g. n = 0 with a vanishing a_0): measure against the mean modulus
    if val.is_zero() or val.log_abs() < scale.log_abs() + math.log(1e-300):
        return math.exp(diff.log_abs() - scale.log_abs())
    return math.exp(diff.log_abs() - val.log_abs())


def taylor_coefficient(f: AnalyticFunction, n: int, r, cfg: DriverConfig = DriverConfig()
                       ) -> QuadratureOutcome:
    """Compute ``a_n`` (or ``n! a_n``) on the circle of radius ``r``.

    Starts with ``max(n+1, m_initial_floor)`` nodes and doubles, reusing all
    previous samples, until the geometrically extrapolated error estimate
    ``(err0/err1)**2 * err0`` is at most ``kappa_m * tol``. No stop is
    possible on the first doubling, when there is no previous change yet.
    """
    if n < 0:
        raise ValueError("order n must be nonnegative")
    r = _radius_of(r)
    R = f.radius_of_convergence
    if not (r > 0 and math.isfinite(r)):
        raise DomainError(f"radius must be positive and finite, got {r!r}")
    if r > R:
        raise DomainError(f"radius outside disk of analyticity: r={r!r}, R={R!r}")

    m = cfg.m_initial(n)
    ring = sample_ring(f, r, m)
    val_prev = trapezoidal_coefficient(ring, n)
    kappa = discrete_condition_number(ring, n)
    val = val_prev
    err0 = math.nan
    err1 = None
    err = math.inf
    status = Status.MAX_NODES_REACHED

    while 2 * ring.count <= cfg.m_max:
        ring = ring.doubled(f)
        val = trapezoidal_coefficient(ring, n)
        kappa = discrete_condition_number(ring, n)
        scale = mean_modulus(ring).scale_log(-n * math.log(r))
        err0 = _relative_change(val, val_prev, scale)
        if err1 is None:
            err = math.inf
        elif err0 == 0.0:
            err = 0.0
        elif err1 == 0.0:
            err = math.inf
        else:
            err = (err0 / err1) ** 2 * err0
        if not math.isfinite(kappa):
            status = Status.DEGENERATE_DENOMINATOR
            break
        if err <= kappa * cfg.tol:
            status = Status.CONVERGED
            break
        val_prev, err1 = val, err0

    if ring.count == m and not math.isfinite(kappa):
        status = Status.DEGENERATE_DENOMINATOR

    estimate = err if math.isfinite(err) else (err0 if math.isfinite(err0) else None)
    if cfg.scale_to_derivative and not val.is_zero():
        val = val.scale_log(math.lgamma(n + 1))
    return QuadratureOutcome(value=val, m_used=ring.count, kappa_m=kappa,
                             rel_error_estimate=estimate, status=status, n=n, radius=r,
                             derivative=cfg.scale_to_derivative)


def derivative(f: AnalyticFunction, n: int, plan, cfg: DriverConfig = DriverConfig()
               ) -> QuadratureOutcome:
    """``f^(n)(0) = n! a_n``; the factorial is applied on the exponent via log-gamma.

    ``plan`` is a :class:`~cauchy_deriv.radius.RadiusPlan` or a bare radius.
    """
    return taylor_coefficient(f, n, _radius_of(plan), replace(cfg, scale_to_derivative=True))


def digit_loss_estimate(kappa: float) -> float:
    """Predicted number of lost significant digits, ``log10(kappa)``."""
    if not kappa > 1.0:
        return 0.0
    return math.log10(kappa)

