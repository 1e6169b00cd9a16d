"""Choosing the radius of the circle of integration.

Strategies: minimizing ``log f(e^s) - n s`` for nonnegative coefficients,
Newton's method on the saddle-point equation ``z L'(z) = n``, the asymptotic
radius ``(n/(tau rho))^(1/rho)`` for perfectly regular growth, rules derived
from an algebraic singularity on the circle of convergence, and empirical
minimization of the condition number.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy import optimize

from . import budget
from .driver import DriverConfig, taylor_coefficient
from .errors import ConvergenceError, DomainError, EvaluationError
from .quad import AnalyticFunction, reference_condition_number
from .saddle import (conjugate_saddles, log_derivative, log_second_derivative, saddle_info,
                     saddle_kappa_estimate)

_EPS_DEFAULT = 1e-15


class Strategy(str, enum.Enum):
    USER_FIXED = "user_fixed"
    NONNEG_CONVEX = "nonneg_convex"
    SADDLE = "saddle"
    PRG_ASYMPTOTIC = "prg_asymptotic"
    DARBOUX = "darboux"
    EMPIRICAL_SCAN = "empirical_scan"


@dataclass(frozen=True)
class RadiusPlan:
    radius: float
    strategy: Strategy
    predicted_nodes: Optional[int] = None
    predicted_digit_loss: Optional[float] = None
    saddle_point: Optional[complex] = None
    warning: Optional[str] = None

    def __post_init__(self):
        if not self.radius > 0:
            raise DomainError(f"radius must be positive, got {self.radius!r}")


@dataclass(frozen=True)
class ConditionCurve:
    n: int
    entries: tuple  # ((r, kappa), ...) with r strictly increasing

    @property
    def radii(self) -> np.ndarray:
        return np.array([r for r, _ in self.entries])

    @property
    def kappas(self) -> np.ndarray:
        return np.array([k for _, k in self.entries])

    def argmin(self) -> tuple:
        return min(self.entries, key=lambda e: e[1])


def fixed_plan(f: AnalyticFunction, n: int, r: float) -> RadiusPlan:
    r = float(r)
    if not (r > 0 and math.isfinite(r)):
        raise DomainError(f"radius must be positive and finite, got {r!r}")
    if r >= f.radius_of_convergence:
        raise DomainError(f"radius outside disk of analyticity: r={r!r}, R={f.radius_of_convergence!r}")
    nodes = None
    if math.isfinite(f.radius_of_convergence):
        nodes = budget.nodes_finite_R(_EPS_DEFAULT, r, f.radius_of_convergence, n).recommendation
    return RadiusPlan(r, Strategy.USER_FIXED, predicted_nodes=nodes)


# ------------------------------------------------------ nonnegative case

def _log_f_real(f: AnalyticFunction, r: float) -> float:
    with np.errstate(all="ignore"):
        val = complex(np.asarray(f.log(np.asarray([complex(r, 0.0)])))[0]).real
    return val if not math.isnan(val) else math.inf


def _slope(f: AnalyticFunction, n: int, s: float) -> float:
    r = math.exp(s)
    try:
        lp = log_derivative(f, complex(r, 0.0)).real
    except EvaluationError:
        return math.nan
    return r * lp - n


def radius_nonneg_convex(f: AnalyticFunction, n: int) -> RadiusPlan:
    """Minimize ``g(s) = log f(e^s) - n s``, which is convex for nonnegative coefficients.

    The bracket grows outward from ``s = 0`` in doubling steps until the slope
    changes sign; the minimizer is then located by bounded Brent search and
    polished as the root of the slope ``r L'(r) - n``.
    """
    if n < 1:
        raise DomainError("radius_nonneg_convex needs n >= 1")
    if not (f.is_entire and f.nonnegative_coefficients):
        raise DomainError("radius_nonneg_convex needs an entire function with nonnegative coefficients")
    s0 = 0.0
    d0 = _slope(f, n, s0)
    step = 1.0
    if d0 == 0:
        return _nonneg_plan(f, n, s0)
    if math.isnan(d0):
        raise DomainError("log-derivative not finite at r = 1")
    if d0 < 0:
        lo, hi = s0, s0 + step
        while not _slope(f, n, hi) >= 0:
            if math.isnan(_slope(f, n, hi)) or hi > 700:
                raise DomainError(f"no interior minimizer found (searched up to r = e^{hi:g})")
            lo, hi, step = hi, hi + 2 * step, 2 * step
    else:
        lo, hi = s0 - step, s0
        while not _slope(f, n, lo) <= 0:
            if math.isnan(_slope(f, n, lo)) or lo < -700:
                raise DomainError(f"no interior minimizer found (searched down to r = e^{lo:g})")
            hi, lo, step = lo, lo - 2 * step, 2 * step

    g = lambda s: _log_f_real(f, math.exp(s)) - n * s
    res = optimize.minimize_scalar(g, bounds=(lo, hi), method="bounded", options={"xatol": 1e-12})
    s = float(res.x)
    # the objective is flat at the minimum, so finish on the slope
    a, b = max(lo, s - 1e-3), min(hi, s + 1e-3)
    if _slope(f, n, a) <= 0 <= _slope(f, n, b):
        s = optimize.brentq(lambda t: _slope(f, n, t), a, b, xtol=1e-15, rtol=1e-15)
    elif _slope(f, n, lo) <= 0 <= _slope(f, n, hi):
        s = optimize.brentq(lambda t: _slope(f, n, t), lo, hi, xtol=1e-15, rtol=1e-15)
    return _nonneg_plan(f, n, s)


def _nonneg_plan(f: AnalyticFunction, n: int, s: float) -> RadiusPlan:
    r = math.exp(s)
    nodes = None
    if f.order is not None and 0 < f.order < math.inf:
        nodes = budget.nodes_prg_quasioptimal(_EPS_DEFAULT, n, f.order).recommendation
    return RadiusPlan(r, Strategy.NONNEG_CONVEX, predicted_nodes=nodes, saddle_point=complex(r, 0.0))


# ---------------------------------------------------------- saddle case

def _default_guess(f: AnalyticFunction, n: int) -> complex:
    if f.saddle_guess is not None:
        return complex(f.saddle_guess(n))
    ray = f.saddle_rays[0] if f.saddle_rays else 0.0
    if f.order and f.type_ and 0 < f.order < math.inf and 0 < f.type_ < math.inf:
        r = radius_prg_asymptotic(n, f.order, f.type_).radius
    else:
        r = float(n)
    return r * complex(math.cos(ray), math.sin(ray))


def radius_saddle(f: AnalyticFunction, n: int, z0: Optional[complex] = None,
                  max_iter: int = 100) -> RadiusPlan:
    """Solve ``G(z) = z L'(z) - n = 0`` by Newton's method from ``z0``."""
    if n < 1:
        raise DomainError("radius_saddle needs n >= 1")
    z = complex(z0) if z0 is not None else _default_guess(f, n)
    for _ in range(max_iter):
        lp = log_derivative(f, z)
        G = z * lp - n
        if abs(G) <= 1e-10 * n:
            break
        dG = lp + z * log_second_derivative(f, z)
        if dG == 0:
            raise ConvergenceError("saddle Newton step undefined (G' = 0)", last=z)
        step = G / dG
        if abs(step) > 0.5 * abs(z):
            step *= 0.5 * abs(z) / abs(step)
        z = z - step
        if z == 0:
            raise ConvergenceError("saddle iteration reached z = 0", last=z)
    else:
        raise ConvergenceError(f"saddle iteration did not converge after {max_iter} steps", last=z)
    loss = None
    try:
        info = saddle_info(f, z, n)
        if info.b.real > 0:
            loss = math.log10(max(1.0, saddle_kappa_estimate(conjugate_saddles(f, info, n))))
    except (EvaluationError, DomainError):
        pass
    nodes = None
    if f.order is not None and 0 < f.order < math.inf:
        nodes = budget.nodes_prg_quasioptimal(_EPS_DEFAULT, n, f.order).recommendation
    return RadiusPlan(abs(z), Strategy.SADDLE, predicted_nodes=nodes, predicted_digit_loss=loss,
                      saddle_point=z)


def radius_prg_asymptotic(n: int, rho: float, tau: float) -> RadiusPlan:
    """``(n / (tau rho))^(1/rho)``."""
    if not (rho > 0 and tau > 0):
        raise DomainError("rho and tau must be positive")
    if n < 1:
        raise DomainError("radius_prg_asymptotic needs n >= 1")
    r = (n / (tau * rho)) ** (1.0 / rho) if math.isfinite(rho) and math.isfinite(tau) else math.nan
    if not math.isfinite(r):
        raise DomainError("rho and tau must be finite")
    nodes = budget.nodes_prg_quasioptimal(_EPS_DEFAULT, n, rho).recommendation
    return RadiusPlan(r, Strategy.PRG_ASYMPTOTIC, predicted_nodes=nodes)


# --------------------------------------------------------- Darboux case

def radius_darboux(n: int, beta: float, R: float) -> RadiusPlan:
    """Radius for ``f`` with an algebraic singularity ``(1 - z/z0)^beta`` on ``|z| = R``.

    beta > -1: ``R`` itself (``f`` is in the Hardy space; the condition number
    grows like ``n^(beta+1)`` whatever the radius). beta = -1:
    ``R (1 - 1/(n log n))``. beta < -1: ``R (1 + (beta+1)/n)``.
    """
    if n < 2:
        raise DomainError("radius_darboux needs n >= 2")
    if beta >= 0 and beta == int(beta):
        raise DomainError("not a branch point: beta is a nonnegative integer")
    if not (R > 0 and math.isfinite(R)):
        raise DomainError("R must be positive and finite")
    warning = None
    if beta > -1:
        r = R
        loss = math.log10(n ** (beta + 1))
        warning = "unbounded condition number: beta > -1"
        nodes = None
    elif beta == -1:
        r = R * (1.0 - 1.0 / (n * math.log(n)))
        loss = None
        nodes = budget.nodes_darboux(_EPS_DEFAULT, n, beta).recommendation
    else:
        r = R * (1.0 + (beta + 1.0) / n)
        loss = None
        nodes = budget.nodes_darboux(_EPS_DEFAULT, n, beta).recommendation
    if not r > 0:
        raise DomainError(f"n too small for the Darboux radius (r = {r!r})")
    return RadiusPlan(r, Strategy.DARBOUX, predicted_nodes=nodes, predicted_digit_loss=loss,
                      warning=warning)


# ------------------------------------------------------- empirical scans

def condition_at(f: AnalyticFunction, exact_an, n: int, r: float,
                 cfg: DriverConfig = DriverConfig()) -> float:
    """Reference κ from an exact coefficient, else κ_m of a driver run."""
    if exact_an is not None:
        return reference_condition_number(f, exact_an, n, r)
    return taylor_coefficient(f, n, r, cfg).kappa_m


def scan_condition(f: AnalyticFunction, exact_an, n: int, r_lo: float, r_hi: float, points: int,
                   cfg: DriverConfig = DriverConfig()) -> ConditionCurve:
    """κ(n, r) on ``points`` log-spaced radii between ``r_lo`` and ``r_hi``."""
    if not (0 < r_lo < r_hi):
        raise DomainError("need 0 < r_lo < r_hi")
    if r_hi > f.radius_of_convergence:
        raise DomainError("r_hi outside disk of analyticity")
    if points < 3:
        raise DomainError("points must be at least 3")
    radii = np.geomspace(r_lo, r_hi, points)
    entries = tuple((float(r), condition_at(f, exact_an, n, float(r), cfg)) for r in radii)
    return ConditionCurve(n, entries)


def _convexity_violated(curve: ConditionCurve) -> bool:
    x = np.log(curve.radii)
    y = np.log(np.maximum(curve.kappas, 1.0))
    if not np.all(np.isfinite(y)):
        return True
    d = np.diff(y) / np.diff(x)
    return bool(np.any(np.diff(d) < -1e-3 * (1.0 + np.abs(d[1:]))))


def optimal_radius_empirical(f: AnalyticFunction, exact_an, n: int, r_lo: float, r_hi: float,
                             cfg: DriverConfig = DriverConfig(), points: int = 25) -> RadiusPlan:
    """Minimize log κ over log r (convex in log r) to relative radius tolerance 1e-3.

    A coarse scan picks the bracket; flat minima resolve to the smallest
    radius whose κ is within a factor 1.001 of the minimum.
    """
    curve = scan_condition(f, exact_an, n, r_lo, r_hi, points, cfg)
    warning = "condition curve not unimodal (kappa_m noise)" if _convexity_violated(curve) else None
    kap = lambda r: condition_at(f, exact_an, n, r, cfg)
    logk = lambda s: math.log(max(kap(math.exp(s)), 1.0))
    ks = curve.kappas
    i = int(np.argmin(ks))
    x = np.log(curve.radii)
    lo, hi = x[max(i - 1, 0)], x[min(i + 1, len(x) - 1)]
    best_s, best_k = float(x[i]), float(ks[i])
    if hi > lo:
        res = optimize.minimize_scalar(logk, bounds=(lo, hi), method="bounded",
                                       options={"xatol": 5e-4})
        k = math.exp(res.fun)
        if k <= best_k:
            best_s, best_k = float(res.x), k
    # smallest radius in the 1.001-sublevel set (an interval, by convexity)
    target = 1.001 * best_k
    left = float(x[0])
    if logk(left) > math.log(target):
        a, b = left, best_s
        while b - a > 1e-3:
            mid = 0.5 * (a + b)
            if logk(mid) <= math.log(target):
                b = mid
            else:
                a = mid
        best_s = b
    else:
        best_s = left
    r = math.exp(best_s)
    return RadiusPlan(r, Strategy.EMPIRICAL_SCAN, predicted_digit_loss=math.log10(max(best_k, 1.0)),
                      warning=warning)


# ------------------------------------------------------------- dispatch

def auto_radius(f: AnalyticFunction, n: int, exact_an=None,
                cfg: DriverConfig = DriverConfig()) -> RadiusPlan:
    """Pick a strategy from the metadata of ``f`` and return its plan."""
    if n < 1:
        raise DomainError("automatic radius selection needs n >= 1; pass a radius for n = 0")
    if f.is_entire and f.nonnegative_coefficients:
        return radius_nonneg_convex(f, n)
    known_growth = (f.order is not None and f.type_ is not None and 0 < f.order < math.inf
                    and 0 < f.type_ < math.inf)
    if f.is_entire and (known_growth or f.saddle_guess is not None):
        try:
            return radius_saddle(f, n)
        except (ConvergenceError, EvaluationError):
            if known_growth:
                plan = radius_prg_asymptotic(n, f.order, f.type_)
                return RadiusPlan(plan.radius, plan.strategy, plan.predicted_nodes,
                                  warning="saddle refinement failed")
            raise
    R = f.radius_of_convergence
    if not f.is_entire and f.darboux_beta is not None and n >= 2:
        return radius_darboux(n, f.darboux_beta, R)
    if not f.is_entire:
        return optimal_radius_empirical(f, exact_an, n, R * 1e-3, R * (1 - 1e-6), cfg)
    return optimal_radius_empirical(f, exact_an, n, 1e-2, 10.0 * (n + 1), cfg)
