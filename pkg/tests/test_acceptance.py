"""Acceptance criteria 1-10.

Each criterion prints one ``PASS``/``FAIL`` line; the lines are also
collected and repeated in the pytest terminal summary. Run directly with
``python3 tests/test_acceptance.py`` for the lines alone.
"""

import math
import time

import numpy as np
import pytest

from cauchy_deriv import DriverConfig, taylor_coefficient
from cauchy_deriv.budget import nodes_entire, nodes_finite_R
from cauchy_deriv.expr import ParseError, parse
from cauchy_deriv.errors import EvaluationError
from cauchy_deriv.quad import (discrete_condition_number, reference_condition_number,
                               reference_log_condition_number, ring_from_values, sample_ring,
                               trapezoidal_coefficient)
from cauchy_deriv.radius import radius_nonneg_convex, radius_saddle
from cauchy_deriv.saddle import gamma_resonance
from cauchy_deriv.scaled import relative_difference
from cauchy_deriv.sfun import lambert_w0, lambert_w0_complex, lookup
from cauchy_deriv.tables import measured_relative_error, minimal_nodes

RESULTS = []


def report(number: int, ok: bool, detail: str, started: float) -> None:
    line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail} ({time.perf_counter() - started:.1f} s)"
    RESULTS.append(line)
    print(line)


def kappa_ref(name, n, r):
    entry = lookup(name)
    return reference_condition_number(entry.function, entry.coefficient(n), n, r)


def kappa_driver(name, n, r, cfg=DriverConfig()):
    return taylor_coefficient(lookup(name).function, n, r, cfg).kappa_m


# ---------------------------------------------------------------- 1

def criterion_1():
    entry = lookup("exp")
    m_eps = minimal_nodes(lambda m: measured_relative_error(entry, 10, 10.0, m), 1e-12, 11, 100)
    bounds = [nodes_entire(e, 10.0, 1.0, 1.0).m_estimate for e in ("1e-12", "1e-100", "1e-1000")]
    ok = (m_eps == 32 and abs(bounds[0] - 48.21) <= 0.05 and abs(bounds[1] - 140.30) <= 0.05
          and abs(bounds[2] - 706.73) <= 0.5)
    return ok, f"m_eps={m_eps} (want 32), bounds={[round(b, 3) for b in bounds]}"


# ---------------------------------------------------------------- 2

def criterion_2():
    entry = lookup("bernoulli_gen")
    m_eps = minimal_nodes(lambda m: measured_relative_error(entry, 100, 6.22, m), 1e-12, 101, 2900)
    est = nodes_finite_R(1e-12, 6.22, 2 * math.pi).m_estimate
    ok = 2700 <= m_eps <= 2790 and abs(est - 2733.80) <= 0.01
    return ok, f"m_eps={m_eps} in [2700, 2790], estimate={est:.4f}"


# ---------------------------------------------------------------- 3

def criterion_3():
    entry = lookup("exp")
    kappas = [reference_condition_number(entry.function, entry.coefficient(n), n, float(n))
              for n in range(1, 201)]
    worst = 0.0
    for n in range(1, 101):
        out = taylor_coefficient(entry.function, n, float(n), DriverConfig(scale_to_derivative=True))
        worst = max(worst, abs(out.value.to_complex() - 1.0))
    ok = 1.0 < max(kappas) < 1.3 and min(kappas) > 1.0 and worst <= 5e-13
    return ok, f"max kappa(n,n)={max(kappas):.5f}, max |f^(n)(0)-1|={worst:.2e}"


# ---------------------------------------------------------------- 4

def criterion_4():
    f = lookup("airy_ai").function
    radii = {n: radius_saddle(f, n).radius for n in (1, 10, 100)}
    kd = {n: kappa_driver("airy_ai", n, radii[n]) for n in (10, 100)}
    want_r = {1: 1.21575, 10: 4.72421, 100: 21.58047}
    want_k = {10: 1.19188, 100: 1.15832}
    ok_r = all(abs(radii[n] - v) <= 5e-6 for n, v in want_r.items())
    ok_k = all(abs(kd[n] - v) <= 5e-5 for n, v in want_k.items())
    band = 2 / math.sqrt(3) * 1.003
    ok_lim = abs(kd[100] / band - 1) <= 0.005
    return ok_r and ok_k and ok_lim, (
        f"r={[round(radii[n], 5) for n in (1, 10, 100)]}, kappa={[round(kd[n], 5) for n in (10, 100)]}, "
        f"kappa(100)/band-1={kd[100] / band - 1:.2e}")


# ---------------------------------------------------------------- 5

def criterion_5():
    f = lookup("airy_bi").function
    r100 = radius_saddle(f, 100).radius
    k = {n: kappa_driver("airy_bi", n, radius_saddle(f, n).radius) for n in (10, 100)}
    gaps = [abs(k[10] - 4 / 3), abs(k[100] - 4 / 3)]
    ok = abs(r100 - 21.58047) <= 5e-6 and abs(k[100] - 1.33751) <= 1e-3 and gaps[1] < gaps[0] \
        and k[10] > k[100] > 4 / 3
    return ok, f"r(100)={r100:.5f}, kappa(10)={k[10]:.5f}, kappa(100)={k[100]:.5f}"


# ---------------------------------------------------------------- 6

def criterion_6():
    checks = []
    v = kappa_ref("f_beta:-1", 100, 1 - 1 / (100 * math.log(100)))
    checks.append(("f_-1 at 1-1/(n log n)", v, abs(v - 3.25) <= 0.05))
    v = kappa_ref("f_beta:-1", 100, 1 - 4 / 100)
    checks.append(("f_-1 at 1-4/n", v, abs(v - 101.63) <= 0.5))
    v_sec = kappa_ref("sec6", 100, math.pi / 2 * (1 - 5 / 100))
    v_f6 = kappa_ref("f_beta:-6", 100, 0.95)
    checks.append(("sec6", v_sec, abs(v_sec - 1.0767) <= 1e-3 and v_sec <= v_f6))
    checks.append(("f_-6 at 0.95", v_f6, abs(v_f6 - 1.0769) <= 1e-3))
    v = kappa_ref("bernoulli_gen", 100, 2 * math.pi * (1 - 1 / 100))
    checks.append(("bernoulli", v, abs(v - 7.2355) <= 0.01))
    v = kappa_ref("fornberg_shift", 100, 1 - 1 / 100)
    checks.append(("10^6+1/(1-z)", v, abs(v / 2.7e6 - 1) <= 0.05))
    v = kappa_ref("fornberg_log", 50, 1.0)
    checks.append(("(1+z)^10 log(1+z)", v, abs(v / 7.4e13 - 1) <= 0.02))
    ok = all(c[2] for c in checks)
    return ok, ", ".join(f"{name}={val:.6g}" for name, val, _ in checks)


# ---------------------------------------------------------------- 7

def criterion_7():
    entry = lookup("bell")
    r = radius_nonneg_convex(entry.function, 100).radius
    w = lambert_w0(100.0)
    out = taylor_coefficient(entry.function, 100, r)
    err = relative_difference(out.value, entry.coefficient(100))
    ok = abs(r / w - 1) <= 1e-8 and abs(out.kappa_m - 1.013) <= 2e-3 and err <= 1e-13
    return ok, f"r/W(100)-1={r / w - 1:.1e}, kappa={out.kappa_m:.5f}, rel err vs Bell={err:.1e}"


# ---------------------------------------------------------------- 8

GAMMA_TABLE = {  # n: (kappa, |sec phi|)
    2002: (1.018, 1.018), 2003: (1.034, 1.033), 2004: (1.301, 1.300), 2005: (2.354, 2.352),
    2007: (2.355, 2.353), 2008: (1.301, 1.300), 2009: (1.034, 1.033), 2010: (1.018, 1.017),
    10931: (1.006, 1.006), 10932: (1.124, 1.124), 10933: (1.498, 1.497), 10934: (2.798, 2.797),
    10936: (2.798, 2.797), 10937: (1.498, 1.497), 10938: (1.124, 1.124), 10939: (1.006, 1.006),
}


def criterion_8():
    f = lookup("rgamma").function
    sec_dev = kappa_dev = 0.0
    rounding_misses = []
    for n, (kappa_tab, sec_tab) in GAMMA_TABLE.items():
        sec = gamma_resonance(n).sec_abs
        sec_dev = max(sec_dev, abs(sec - sec_tab))
        if round(sec, 3) != sec_tab:
            rounding_misses.append(n)
        kd = taylor_coefficient(f, n, radius_saddle(f, n).radius).kappa_m
        kappa_dev = max(kappa_dev, abs(kd / kappa_tab - 1))
    peak = taylor_coefficient(f, 2006, radius_saddle(f, 2006).radius).kappa_m
    ok = sec_dev <= 1e-3 and kappa_dev <= 0.05 and 1 / 1.5 <= peak / 47067.162 <= 1.5
    return ok, (f"max |sec dev|={sec_dev:.1e} (rounded mismatch at n={rounding_misses}), "
                f"max kappa rel dev={kappa_dev:.1e}, kappa(2006)={peak:.3f}")


# ---------------------------------------------------------------- 9

def criterion_9():
    entry = lookup("qpochhammer:0.5")
    r = radius_nonneg_convex(entry.function, 20).radius
    out = taylor_coefficient(entry.function, 20, r)
    ok = abs(r / 2 ** 19.5 - 1) <= 0.05 and out.kappa_m - 1 <= 1e-5
    return ok, f"r/2^19.5={r / 2 ** 19.5:.7f}, kappa-1={out.kappa_m - 1:.1e}"


# ---------------------------------------------------------------- 10

def _prop_aliasing(rng):
    f = lookup("exp").function
    for _ in range(200):
        r, m, n = rng.uniform(0.1, 20), int(rng.integers(1, 40)), int(rng.integers(0, 40))
        ring = sample_ring(f, r, m)
        a = trapezoidal_coefficient(ring, n).scale_log(n * math.log(r)).to_complex()
        b = trapezoidal_coefficient(ring, n + m).scale_log((n + m) * math.log(r)).to_complex()
        if abs(a - b) > 1e-12 * abs(a):
            return False
    return True


def _prop_polynomial(rng):
    for _ in range(100):
        k = int(rng.integers(0, 15))
        m = k + int(rng.integers(1, 16))
        f = lookup("exp").function.__class__("mono", evaluate=lambda z, k=k: z ** k)
        ring = sample_ring(f, 1.0, m)
        for n in range(m):
            v = trapezoidal_coefficient(ring, n).to_complex()
            if (n == k and abs(v - 1) > 1e-14) or (n != k and abs(v) > 1e-14):
                return False
    return True


def _prop_kappa(rng):
    for _ in range(300):
        m = int(rng.integers(1, 64))
        vals = rng.normal(size=m) + 1j * rng.normal(size=m)
        vals *= 10.0 ** rng.uniform(-200, 200)
        if discrete_condition_number(ring_from_values(1.0, vals), int(rng.integers(0, 100))) < 1 - 1e-12:
            return False
    return True


def _prop_abserr(rng):
    for _ in range(300):
        m = int(rng.integers(1, 64))
        vals = rng.normal(size=m) + 1j * rng.normal(size=m)
        eps = 10.0 ** rng.uniform(-10, 0)
        noise = rng.normal(size=m) + 1j * rng.normal(size=m)
        noise *= eps * rng.uniform(0, 1, m) / np.abs(noise)
        n = int(rng.integers(0, 100))
        a = trapezoidal_coefficient(ring_from_values(1.0, vals), n).to_complex()
        b = trapezoidal_coefficient(ring_from_values(1.0, vals + noise), n).to_complex()
        if abs(a - b) > eps * (1 + 1e-12) + 1e-15 * np.abs(vals).max():
            return False
    return True


def _prop_lambert(rng):
    for x in np.concatenate([np.geomspace(1e-300, 1e300, 1000), -np.geomspace(1e-300, 0.3678, 200)]):
        w = lambert_w0(x)
        if abs(w * math.exp(w) - x) > 1e-13 * max(1.0, abs(x)):
            return False
    for r, t in zip(np.geomspace(1e-6, 1e8, 1000), rng.uniform(-math.pi, math.pi, 1000)):
        z = complex(r * math.cos(t), r * math.sin(t))
        w = lambert_w0_complex(z)
        if abs(w * np.exp(w) - z) > 1e-13 * max(1.0, abs(z)):
            return False
    return True


def _prop_convexity(rng):
    for name, n, lo, hi in (("exp", 10, 0.5, 200.0), ("exp", 100, 5.0, 500.0), ("bell", 30, 0.3, 20.0),
                            ("airy_ai", 51, 0.5, 60.0), ("cos", 20, 0.5, 100.0)):
        entry = lookup(name)
        x = np.linspace(math.log(lo), math.log(hi), 30)
        y = np.array([reference_log_condition_number(entry.function, entry.coefficient(n), n, math.exp(s))
                      for s in x])
        d = np.diff(y) / np.diff(x)
        if np.any(np.diff(d) < -1e-6 * (1 + np.abs(d[1:]))):
            return False
    return True


def _prop_monotone(rng):
    for name in ("exp", "bell"):
        f = lookup(name).function
        radii = [radius_nonneg_convex(f, n).radius for n in range(2, 51)]
        if any(b < a for a, b in zip(radii, radii[1:])):
            return False
    return True


def _prop_parser(rng):
    for _ in range(2000):
        data = bytes(rng.integers(0, 256, int(rng.integers(0, 40))).tolist())
        try:
            expr = parse(data)
        except ParseError as err:
            if not 0 <= err.offset <= len(data):
                return False
            continue
        try:
            expr(0.3 + 0.2j)
        except EvaluationError:
            pass
    return True


def _prop_oracles(rng):
    names = ["exp", "cos", "sin", "bessel_i:2", "bessel_j:1", "bessel_scaled:1", "erf", "exp_neg_sq",
             "airy_ai", "airy_bi", "bell", "qpochhammer:0.5", "f_beta:-1", "f_beta:11/2", "sec6",
             "bernoulli_gen", "fornberg_log", "fornberg_shift"]
    z = 0.1 * np.exp(1j * np.linspace(0, 2 * np.pi, 17))
    for name in names:
        entry = lookup(name)
        coeffs = np.array([entry.coefficient(k).to_complex() for k in range(31)])
        series = np.polyval(coeffs[::-1], z)
        if np.max(np.abs(series - entry.function(z)) / np.abs(entry.function(z))) > 1e-12:
            return False
    return True


PROPERTIES = {
    "aliasing": _prop_aliasing, "polynomial exactness": _prop_polynomial, "kappa_m >= 1": _prop_kappa,
    "absolute-error bound": _prop_abserr, "Lambert identity": _prop_lambert,
    "log-kappa convexity": _prop_convexity, "radius monotonicity": _prop_monotone,
    "parser totality": _prop_parser, "oracle/evaluator": _prop_oracles,
}


def criterion_10():
    rng = np.random.default_rng(20240601)
    failed = [name for name, prop in PROPERTIES.items() if not prop(rng)]
    return not failed, f"{len(PROPERTIES) - len(failed)}/{len(PROPERTIES)} properties hold" + (
        f"; failing: {failed}" if failed else "")


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7,
            criterion_8, criterion_9, criterion_10]


@pytest.mark.parametrize("number", range(1, 11))
def test_criterion(number):
    started = time.perf_counter()
    ok, detail = CRITERIA[number - 1]()
    report(number, ok, detail, started)
    assert ok, detail


if __name__ == "__main__":
    for k, crit in enumerate(CRITERIA, start=1):
        t0 = time.perf_counter()
        passed, info = crit()
        report(k, passed, info, t0)
