"""Pipelines that regenerate the published tables and loss-of-digits curves.

Every function returns a header tuple and a list of row tuples, so the CLI
can render CSV, JSON or text from the same data.
"""

from __future__ import annotations

import math
from typing import Callable, Iterable

import numpy as np

from . import budget
from .driver import DriverConfig, taylor_coefficient
from .quad import (reference_condition_number, reference_log_condition_number, sample_ring,
                   trapezoidal_coefficient)
from .radius import radius_prg_asymptotic, radius_saddle
from .saddle import gamma_resonance
from .scaled import relative_difference
from .sfun import lookup

UNIT_ROUNDOFF = 2.0 ** -53


# -------------------------------------------------------- node counts

def exp_alias_log_error(n: int, r: float, m: int) -> float:
    """``log`` of the relative error of the m-point sum for ``exp`` with exact arithmetic.

    By aliasing the error is ``n! sum_{k>=1} r^(km) / (n+km)!``; it is summed
    in log scale so tolerances far below double range can be compared.
    """
    if m <= n:
        raise ValueError("sampling condition m > n violated")
    logs = []
    k = 1
    while True:
        t = k * m * math.log(r) + math.lgamma(n + 1) - math.lgamma(n + k * m + 1)
        logs.append(t)
        if k > 1 and t < logs[0] - 60:
            break
        k += 1
    top = max(logs)
    return top + math.log(math.fsum(math.exp(t - top) for t in logs))


def minimal_nodes(error_of_m: Callable[[int], float], tol: float, m_lo: int, m_hi: int) -> int:
    """Smallest m such that ``error_of_m(k) <= tol`` for every k in ``[m, m_hi]``.

    Scans downward from ``m_hi``; raises if ``m_hi`` itself fails.
    """
    if error_of_m(m_hi) > tol:
        raise ValueError(f"tolerance not reached at m_hi={m_hi}")
    m = m_hi
    while m - 1 >= m_lo and error_of_m(m - 1) <= tol:
        m -= 1
    return m


def measured_relative_error(entry, n: int, r: float, m: int) -> float:
    ring = sample_ring(entry.function, r, m)
    return relative_difference(trapezoidal_coefficient(ring, n), entry.coefficient(n))


def table_m_exp(n: int = 10, r: float = 10.0, eps_list: Iterable[str] = ("1e-12", "1e-100", "1e-1000")):
    """Observed minimal m against the Lambert-W bound for ``exp``.

    Tolerances reachable in double precision are measured with actual
    trapezoidal sums; smaller ones use the exact aliasing error.
    """
    entry = lookup("exp")
    rows = []
    for eps_text in eps_list:
        bound = budget.nodes_entire(eps_text, r, 1.0, 1.0)
        hi = max(n + 2, int(math.ceil(2 * bound.m_estimate)))
        log_eps = -budget._log_inv(eps_text)
        if log_eps > math.log(1e-14):
            eps = math.exp(log_eps)
            m_eps = minimal_nodes(lambda m: measured_relative_error(entry, n, r, m), eps, n + 1, hi)
        else:
            m_eps = minimal_nodes(lambda m: exp_alias_log_error(n, r, m), log_eps, n + 1, hi)
        rows.append((eps_text, m_eps, round(bound.m_estimate, 2)))
    return ("eps", "m_eps", "bound"), rows


# ---------------------------------------------------- Airy-type tables

def _saddle_table(name: str, ns: Iterable[int]):
    # kappa from the exact coefficients; the driver's kappa_m at its small
    # converged m differs in the fifth digit for n = 1
    entry = lookup(name)
    f = entry.function
    rows = []
    for n in ns:
        plan = radius_saddle(f, n)
        kd = reference_condition_number(f, entry.coefficient(n), n, plan.radius)
        r_prg = radius_prg_asymptotic(n, 1.5, 2.0 / 3.0).radius
        kp = reference_condition_number(f, entry.coefficient(n), n, r_prg)
        rows.append((n, plan.radius, kd, r_prg, kp))
    return ("n", "r_diamond", "kappa_diamond", "n_pow_2_3", "kappa_at_n_pow_2_3"), rows


def table_airy(ns=(1, 10, 100, 1000)):
    return _saddle_table("airy_ai", ns)


def table_bi(ns=(1, 10, 100, 1000)):
    return _saddle_table("airy_bi", ns)


# ------------------------------------------------------------- Gamma

GAMMA_ROWS = tuple(range(2002, 2011)) + tuple(range(10931, 10940))


def gamma_row(n: int, cfg: DriverConfig = DriverConfig()) -> tuple:
    """``(n, r_diamond, kappa_diamond, |sec phi_n|)`` for ``1/Gamma``.

    The radius is the modulus of the exact saddle ``-z psi(z) = n``, seeded
    with its asymptotic Lambert-W value.
    """
    f = lookup("rgamma").function
    plan = radius_saddle(f, n)
    kd = taylor_coefficient(f, n, plan.radius, cfg).kappa_m
    return n, plan.radius, kd, gamma_resonance(n).sec_abs


def table_gamma(ns=GAMMA_ROWS):
    return ("n", "r_diamond", "kappa_diamond", "sec_abs"), [gamma_row(n) for n in ns]


# --------------------------------------------------------- functions

_FUNCTIONS_ROWS = (
    ("exp(z)", "1", "1", "n", "1", "cos(theta)", "1", "1"),
    ("cos(z)", "1", "1", "n", "1", "|sin(theta)|", "2", "1/2"),
    ("sin(z)", "1", "1", "n", "1", "|sin(theta)|", "2", "1/2"),
    ("J_k(z)", "1", "1", "n", "1", "|sin(theta)|", "2", "1/2"),
    ("I_k(z)", "1", "1", "n", "1", "|cos(theta)|", "2", "1/2"),
    ("z^(-k/2) I_k(2 sqrt(z))", "1/2", "2", "n^2", "1", "2 cos(theta/2)", "1", "1"),
    ("erf(z)", "2", "1", "sqrt(n/2)", "1", "(-cos(2 theta))_+", "2", "1/2"),
    ("exp(-z^2)", "2", "1", "sqrt(n/2)", "1", "-cos(2 theta)", "2", "1/2"),
    ("Ai(z)", "3/2", "2/3", "n^(2/3)", "2/sqrt(3)", "-(2/3) cos(3 theta/2)", "2", "1/sqrt(3)"),
    ("Bi(z)", "3/2", "2/3", "n^(2/3)", "4/3", "(2/3) |cos(3 theta/2)|", "3", "2/3"),
    ("C(z)", "2", "pi/2", "sqrt(n/pi)", "1", "(pi/2) |sin(2 theta)|", "4", "1/4"),
    ("S(z)", "2", "pi/2", "sqrt(n/pi)", "1", "(pi/2) |sin(2 theta)|", "4", "1/4"),
    ("(-z;q)_inf", "0", "", "q^(1/2-n)", "1", "", "", ""),
    ("1/Gamma(z)", "1", "inf", "exp(Re W(1/2-n))", "(1,inf)", "", "", ""),
    ("exp(exp(z)-1)", "inf", "", "W(n)", "1", "", "", ""),
)


def table_functions():
    return (("function", "order", "type", "r_diamond", "lim_kappa_diamond", "indicator", "Omega", "omega"),
            list(_FUNCTIONS_ROWS))


# ---------------------------------------------- loss-of-digits curves

CONDCOMP = (
    ("exp", (1.0, 1000.0)),
    ("airy_ai", (0.5, 100.0)),
    ("bell", (0.2, 10.0)),
    ("sec6", (0.2, math.pi / 2 * (1 - 1e-3))),
    ("bernoulli_gen", (0.5, 2 * math.pi * (1 - 1e-3))),
    ("f_beta:11/2", (0.2, 1.0 - 1e-3)),
)


def condcomp_rows(name: str, n: int, r_lo: float, r_hi: float, points: int = 40,
                  cfg: DriverConfig = DriverConfig(m_max=2 ** 16)) -> list:
    """Rows ``(function, n, r, kappa, predicted loss, empirical loss)``.

    The empirical loss is ``log10(relerr / u)`` for the driver result against
    the exact coefficient; it is ``nan`` when the result is exact.
    """
    entry = lookup(name)
    rows = []
    for r in np.geomspace(r_lo, r_hi, points):
        r = float(r)
        exact = entry.coefficient(n)
        log_kappa = reference_log_condition_number(entry.function, exact, n, r)
        kappa = math.exp(log_kappa) if log_kappa < 709.0 else math.inf
        out = taylor_coefficient(entry.function, n, r, cfg)
        err = relative_difference(out.value, exact)
        emp = math.log10(err / UNIT_ROUNDOFF) if err > 0 else math.nan
        rows.append((name, n, r, kappa, max(log_kappa, 0.0) / math.log(10.0), emp))
    return rows


def table_condcomp(ns=(10, 100), points: int = 40):
    rows = []
    for name, (lo, hi) in CONDCOMP:
        for n in ns:
            rows.extend(condcomp_rows(name, n, lo, hi, points))
    return ("function", "n", "r", "kappa", "digit_loss_predicted", "digit_loss_empirical"), rows


TABLES = {
    "airy": table_airy,
    "bi": table_bi,
    "m_exp": table_m_exp,
    "gamma": table_gamma,
    "functions": table_functions,
    "condcomp": table_condcomp,
}
