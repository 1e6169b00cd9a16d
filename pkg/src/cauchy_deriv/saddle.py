"""Saddle-point diagnostics for the Cauchy integrand ``F(z) = z^-n f(z)``.

With ``L = log f`` the coefficients ``a(z) = z L'(z)`` and ``b(z) = z a'(z)``
describe ``log F`` near a saddle; ``a = n`` there and ``Re b > 0``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import mpmath
import numpy as np

from .errors import DomainError, EvaluationError
from .quad import AnalyticFunction
from .scaled import ScaledComplex
from .sfun.lambert import lambert_w0_complex


def _fd_step(z: complex, rel: float) -> float:
    return max(rel, rel * abs(z))


def _wrap_imag(d: complex) -> complex:
    # differences of a principal log may jump by 2 pi i
    im = (d.imag + math.pi) % (2 * math.pi) - math.pi
    return complex(d.real, im)


def _log_at(f: AnalyticFunction, z: complex) -> complex:
    val = complex(np.asarray(f.log(np.asarray([z], dtype=complex)))[0])
    if not (math.isfinite(val.real) and math.isfinite(val.imag)):
        raise EvaluationError(f"log f is not finite at z={z!r} (zero or singularity of f)")
    return val


def _central(g, z: complex, h: float, wrap: bool) -> complex:
    d = g(z + h) - g(z - h)
    return (_wrap_imag(d) if wrap else d) / (2 * h)


def _richardson(g, z: complex, h: float, wrap: bool = False) -> complex:
    d1 = _central(g, z, h, wrap)
    d2 = _central(g, z, h / 2, wrap)
    return (4 * d2 - d1) / 3


def log_derivative(f: AnalyticFunction, z: complex) -> complex:
    """``L'(z) = f'(z)/f(z)``, analytic when available, else by finite differences of ``log f``."""
    z = complex(z)
    arr = np.asarray([z], dtype=complex)
    if f.log_derivative is not None:
        val = complex(np.asarray(f.log_derivative(arr))[0])
    elif f.derivative is not None and f.evaluate is not None:
        fz = complex(np.asarray(f.evaluate(arr))[0])
        if fz == 0:
            raise EvaluationError(f"f vanishes at z={z!r}")
        val = complex(np.asarray(f.derivative(arr))[0]) / fz
    else:
        val = _richardson(lambda w: _log_at(f, w), z, _fd_step(z, 1e-6), wrap=True)
    if not (math.isfinite(val.real) and math.isfinite(val.imag)):
        raise EvaluationError(f"log-derivative is not finite at z={z!r}")
    return val


def log_second_derivative(f: AnalyticFunction, z: complex) -> complex:
    """``L''(z)`` by Richardson-refined central differences of ``L'``."""
    z = complex(z)
    analytic = f.log_derivative is not None or f.derivative is not None
    h = _fd_step(z, 1e-5 if analytic else 1e-3)
    return _richardson(lambda w: log_derivative(f, w), z, h)


def log_derivative_coefficients(f: AnalyticFunction, z: complex) -> tuple:
    """Return ``(a, b)`` with ``a = z L'(z)`` and ``b = z (L'(z) + z L''(z))``."""
    z = complex(z)
    lp = log_derivative(f, z)
    lpp = log_second_derivative(f, z)
    a = z * lp
    return a, z * (lp + z * lpp)


@dataclass(frozen=True)
class SaddleInfo:
    z: complex
    a: complex
    b: complex
    F_value: ScaledComplex


def saddle_info(f: AnalyticFunction, z: complex, n: int) -> SaddleInfo:
    z = complex(z)
    a, b = log_derivative_coefficients(f, z)
    F = ScaledComplex.from_log(_log_at(f, z) - n * cmath.log(z))
    return SaddleInfo(z, a, b, F)


def conjugate_saddles(f: AnalyticFunction, info: SaddleInfo, n: int) -> list:
    """The saddle and, for real Taylor coefficients, its mirror image."""
    out = [info]
    if f.real_coefficients and abs(info.z.imag) > 1e-12 * abs(info.z):
        out.append(SaddleInfo(info.z.conjugate(), info.a.conjugate(), info.b.conjugate(),
                              ScaledComplex(info.F_value.mantissa.conjugate(), info.F_value.exponent)))
    return out


def saddle_kappa_estimate(saddles) -> float:
    """``sum |F| / sqrt(Re b)`` over ``|sum F / sqrt(b)|`` for the given saddles."""
    saddles = list(saddles)
    if not saddles:
        raise ValueError("need at least one saddle")
    if any(not s.b.real > 0 for s in saddles):
        raise DomainError("every saddle needs Re b > 0")
    scale = max(s.F_value.log_abs() for s in saddles if not s.F_value.is_zero())
    num = 0.0
    den = 0j
    for s in saddles:
        if s.F_value.is_zero():
            continue
        F = s.F_value.mantissa * math.exp(s.F_value.exponent - scale)
        num += abs(F) / math.sqrt(s.b.real)
        den += F / cmath.sqrt(s.b)
    if den == 0:
        return math.inf
    return num / abs(den)


def steepest_descent_deviation(b: complex) -> float:
    """Fourth root of ``1 + (Im b / Re b)^2``: the loss from crossing the saddle radially."""
    b = complex(b)
    if not b.real > 0:
        raise DomainError("steepest_descent_deviation needs Re b > 0")
    return (1.0 + (b.imag / b.real) ** 2) ** 0.25


@dataclass(frozen=True)
class GammaResonance:
    r: float
    theta: float
    phi: float
    sec_abs: float

    def __iter__(self):
        return iter((self.r, self.theta, self.phi, self.sec_abs))


def gamma_resonance(n: int) -> GammaResonance:
    """Collective phase of the two saddles of ``1/Gamma`` and the predicted ``|sec phi|``.

    ``z = exp(W(1/2 - n))`` on the principal branch with ``Im W`` in ``(0, pi)``.
    The phase is large (thousands of radians) while ``cos phi`` can be tiny, so
    W is polished and the phase evaluated in 40-digit arithmetic.
    """
    if n < 2:
        raise DomainError("gamma_resonance needs n >= 2")
    w0 = lambert_w0_complex(0.5 - n)
    with mpmath.workdps(40):
        x = mpmath.mpf(1) / 2 - n
        w = mpmath.mpc(w0.real, w0.imag)
        for _ in range(4):
            ew = mpmath.exp(w)
            w = w - (w * ew - x) / (ew * (w + 1))
        theta = w.imag
        nu = mpmath.mpf(n) - mpmath.mpf(1) / 2
        s = mpmath.sin(theta)
        cot = mpmath.cos(theta) / s
        inner = cot - theta / s ** 2
        # principal arccot, values in (-pi/2, pi/2]
        arccot = mpmath.acot(inner)
        phi = nu * (s ** 2 / theta - theta + theta / (12 * nu ** 2)) - arccot / 2
        sec_abs = abs(1 / mpmath.cos(phi))
        r = mpmath.exp(w.real)
        return GammaResonance(float(r), float(theta), float(phi), float(sec_abs))
