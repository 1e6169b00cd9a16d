"""Test functions with growth metadata and exact Taylor-coefficient oracles.

Names may carry one parameter after a colon: ``bessel_i:2``, ``f_beta:-1``,
``qpochhammer:0.5``. Oracles return :class:`ScaledComplex` so coefficients
like ``1/1000!`` stay representable.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

import numpy as np
from scipy import special

from ..errors import DomainError
from ..quad import AnalyticFunction
from ..scaled import ZERO, ScaledComplex
from .lambert import lambert_w0_complex
from .loggamma import log_rgamma

Oracle = Callable[[int], ScaledComplex]

_LOG2 = math.log(2.0)


class UnknownFunctionError(DomainError, LookupError):
    """No catalog entry with the requested name."""


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    function: AnalyticFunction
    oracle: Optional[Oracle] = None
    metadata: dict = field(default_factory=dict)
    expression: Optional[str] = None

    def coefficient(self, n: int) -> ScaledComplex:
        if self.oracle is None:
            raise DomainError(f"no coefficient oracle for {self.name!r}")
        if n < 0:
            raise ValueError("n must be nonnegative")
        return self.oracle(n)


# ---------------------------------------------------------------- helpers

def _from_fraction(q: Fraction) -> ScaledComplex:
    if q == 0:
        return ZERO
    sign = 1.0 if q > 0 else -1.0
    num, den = abs(q.numerator), q.denominator
    return ScaledComplex.from_log(complex(math.log(num) - math.log(den), 0.0)) * sign


def _signed_log(sign: float, log_abs: float) -> ScaledComplex:
    return ScaledComplex.from_log(complex(log_abs, 0.0)) * sign


def _log_cos(z):
    # log cos z without overflow, split by half plane
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        iz = 1j * z
        upper = -iz + np.log1p(np.exp(2j * z)) - _LOG2
        lower = iz + np.log1p(np.exp(-2j * z)) - _LOG2
    return np.where(z.imag >= 0, upper, lower)


def _log_sin(z):
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        iz = 1j * z
        upper = -iz + np.log1p(-np.exp(2j * z)) + complex(-_LOG2, math.pi / 2)
        lower = iz + np.log1p(-np.exp(-2j * z)) + complex(-_LOG2, -math.pi / 2)
    return np.where(z.imag >= 0, upper, lower)


class _Memo:
    """Append-only table filled by ``extend(table, upto)`` under a lock."""

    def __init__(self, extend):
        self._table = []
        self._extend = extend
        self._lock = threading.Lock()

    def __getitem__(self, n: int):
        if n >= len(self._table):
            with self._lock:
                if n >= len(self._table):
                    self._extend(self._table, n)
        return self._table[n]


def _extend_bernoulli(table, upto):
    # B_0..B_upto via sum_{k<m} C(m+1, k) B_k = -(m+1) B_m, B_1 = -1/2
    upto = max(upto, 128)
    if not table:
        table.append(Fraction(1))
    for m in range(len(table), upto + 1):
        acc = Fraction(0)
        binom = 1
        for k in range(m):
            acc += binom * table[k]
            binom = binom * (m + 1 - k) // (k + 1)
        table.append(-acc / (m + 1))


def _extend_bell(table, upto):
    if not table:
        table.append((1, [1]))
    row = table[-1][1]
    for _ in range(len(table), upto + 1):
        new = [row[-1]]
        for x in row:
            new.append(new[-1] + x)
        row = new
        table.append((row[0], row))


def _series_mul(a, b, N):
    out = [Fraction(0)] * (N + 1)
    for i, ai in enumerate(a[:N + 1]):
        if ai == 0:
            continue
        for j in range(N + 1 - i):
            if b[j]:
                out[i + j] += ai * b[j]
    return out


def _extend_sec6(table, upto):
    N = max(upto, 120)
    cos = [Fraction(0)] * (N + 1)
    for k in range(0, N + 1, 2):
        cos[k] = Fraction((-1) ** (k // 2), math.factorial(k))
    sec = [Fraction(0)] * (N + 1)
    sec[0] = Fraction(1)
    for k in range(1, N + 1):
        sec[k] = -sum(cos[j] * sec[k - j] for j in range(2, k + 1, 2))
    sec2 = _series_mul(sec, sec, N)
    sec4 = _series_mul(sec2, sec2, N)
    sec6 = _series_mul(sec4, sec2, N)
    table[:] = sec6


_BERNOULLI = _Memo(_extend_bernoulli)
_BELL = _Memo(_extend_bell)
_SEC6 = _Memo(_extend_sec6)


def bernoulli_number(n: int) -> Fraction:
    return _BERNOULLI[n]


def bell_number(n: int) -> int:
    return _BELL[n][0]


def sec6_coefficient(n: int) -> Fraction:
    return _SEC6[n]


def _even_odd(n: int, parity: int, body: Callable[[int], ScaledComplex]) -> ScaledComplex:
    return body(n) if n % 2 == parity else ZERO


# ------------------------------------------------------------ the entries

def _exp_entry():
    f = AnalyticFunction("exp", evaluate=np.exp, log_evaluate=lambda z: z, derivative=np.exp,
                         log_derivative=np.ones_like, order=1.0, type_=1.0,
                         nonnegative_coefficients=True)
    return CatalogEntry("exp", f, lambda n: _signed_log(1.0, -math.lgamma(n + 1)),
                        {"R": math.inf, "rho": 1.0, "tau": 1.0, "saddle_ray": 0.0}, "exp(z)")


def _cos_entry():
    f = AnalyticFunction("cos", evaluate=np.cos, log_evaluate=_log_cos, derivative=lambda z: -np.sin(z),
                         log_derivative=lambda z: -np.tan(z), order=1.0, type_=1.0,
                         saddle_rays=(math.pi / 2, -math.pi / 2),
                         saddle_guess=lambda n: 1j * n)
    oracle = lambda n: _even_odd(n, 0, lambda k: _signed_log((-1.0) ** (k // 2), -math.lgamma(k + 1)))
    return CatalogEntry("cos", f, oracle,
                        {"R": math.inf, "rho": 1.0, "tau": 1.0, "saddle_ray": math.pi / 2}, "cos(z)")


def _sin_entry():
    f = AnalyticFunction("sin", evaluate=np.sin, log_evaluate=_log_sin, derivative=np.cos,
                         log_derivative=lambda z: 1.0 / np.tan(z), order=1.0, type_=1.0,
                         saddle_rays=(math.pi / 2, -math.pi / 2),
                         saddle_guess=lambda n: 1j * n)
    oracle = lambda n: _even_odd(n, 1, lambda k: _signed_log((-1.0) ** (k // 2), -math.lgamma(k + 1)))
    return CatalogEntry("sin", f, oracle,
                        {"R": math.inf, "rho": 1.0, "tau": 1.0, "saddle_ray": math.pi / 2}, "sin(z)")


def _bessel_coeff(k: int, sign_alt: bool):
    def oracle(n):
        if n < k or (n - k) % 2:
            return ZERO
        j = (n - k) // 2
        sign = (-1.0) ** j if sign_alt else 1.0
        return _signed_log(sign, -n * _LOG2 - math.lgamma(j + 1) - math.lgamma(j + k + 1))
    return oracle


def _bessel_i_entry(k: int = 0):
    if k < 0:
        raise DomainError("bessel_i needs k >= 0")

    def log_eval(z):
        with np.errstate(divide="ignore"):
            return np.log(special.ive(k, z)) + np.abs(z.real)

    def log_der(z):
        return special.ivp(k, z) / special.iv(k, z)

    f = AnalyticFunction(f"bessel_i:{k}", evaluate=lambda z: special.iv(k, z), log_evaluate=log_eval,
                         order=1.0, type_=1.0, nonnegative_coefficients=True,
                         saddle_rays=(0.0, math.pi))
    return CatalogEntry(f.name, f, _bessel_coeff(k, False),
                        {"R": math.inf, "rho": 1.0, "tau": 1.0, "saddle_ray": 0.0})


def _bessel_j_entry(k: int = 0):
    if k < 0:
        raise DomainError("bessel_j needs k >= 0")

    def log_eval(z):
        with np.errstate(divide="ignore"):
            return np.log(special.jve(k, z)) + np.abs(z.imag)

    f = AnalyticFunction(f"bessel_j:{k}", evaluate=lambda z: special.jv(k, z), log_evaluate=log_eval,
                         order=1.0, type_=1.0, saddle_rays=(math.pi / 2, -math.pi / 2),
                         saddle_guess=lambda n: 1j * n)
    return CatalogEntry(f.name, f, _bessel_coeff(k, True),
                        {"R": math.inf, "rho": 1.0, "tau": 1.0, "saddle_ray": math.pi / 2})


def _bessel_scaled_entry(k: int = 0):
    """``z^(-k/2) I_k(2 sqrt z) = sum z^j / (j! (j+k)!)``."""
    if k < 0:
        raise DomainError("bessel_scaled needs k >= 0")

    def log_eval(z):
        w = 2.0 * np.sqrt(z)
        with np.errstate(divide="ignore", invalid="ignore"):
            out = np.log(special.ive(k, w)) + np.abs(w.real) - k * np.log(w / 2.0)
        return np.where(z == 0, complex(-math.lgamma(k + 1)), out)

    oracle = lambda n: _signed_log(1.0, -math.lgamma(n + 1) - math.lgamma(n + k + 1))
    f = AnalyticFunction(f"bessel_scaled:{k}", log_evaluate=log_eval, order=0.5, type_=2.0,
                         nonnegative_coefficients=True)
    return CatalogEntry(f.name, f, oracle, {"R": math.inf, "rho": 0.5, "tau": 2.0, "saddle_ray": 0.0})


def _log_erf(z):
    # erf(z) = s (1 - E), E = exp(-w^2) w(i w) with w = s z, Re w >= 0, s = +-1
    s = np.where(z.real >= 0, 1.0, -1.0)
    w = s * z
    with np.errstate(all="ignore"):
        log_e = -w * w + np.log(special.wofz(1j * w))
        e = np.exp(log_e)
        small = np.log1p(-e)
        large = log_e + 1j * math.pi + np.log1p(-np.exp(-log_e))
    out = np.where(log_e.real > 30.0, large, small)
    return out + np.where(s < 0, 1j * math.pi, 0.0)


def _erf_entry():
    def oracle(n):
        if n % 2 == 0:
            return ZERO
        k = (n - 1) // 2
        return _signed_log((-1.0) ** k, math.log(2 / math.sqrt(math.pi)) - math.lgamma(k + 1) - math.log(n))

    f = AnalyticFunction("erf", evaluate=special.erf, log_evaluate=_log_erf,
                         derivative=lambda z: 2 / math.sqrt(math.pi) * np.exp(-z * z),
                         order=2.0, type_=1.0, saddle_rays=(math.pi / 2, -math.pi / 2))
    return CatalogEntry("erf", f, oracle,
                        {"R": math.inf, "rho": 2.0, "tau": 1.0, "saddle_ray": math.pi / 2})


def _gauss_entry():
    def oracle(n):
        if n % 2:
            return ZERO
        k = n // 2
        return _signed_log((-1.0) ** k, -math.lgamma(k + 1))

    f = AnalyticFunction("exp_neg_sq", evaluate=lambda z: np.exp(-z * z), log_evaluate=lambda z: -z * z,
                         log_derivative=lambda z: -2 * z, order=2.0, type_=1.0,
                         saddle_rays=(math.pi / 2, -math.pi / 2),
                         saddle_guess=lambda n: 1j * math.sqrt(n / 2))
    return CatalogEntry("exp_neg_sq", f, oracle,
                        {"R": math.inf, "rho": 2.0, "tau": 1.0, "saddle_ray": math.pi / 2}, "exp(-z^2)")


_AI0 = 1.0 / (3.0 ** (2.0 / 3.0) * math.gamma(2.0 / 3.0))
_AI1 = -1.0 / (3.0 ** (1.0 / 3.0) * math.gamma(1.0 / 3.0))
_BI0 = 1.0 / (3.0 ** (1.0 / 6.0) * math.gamma(2.0 / 3.0))
_BI1 = 3.0 ** (1.0 / 6.0) / math.gamma(1.0 / 3.0)


def airy_coefficient(n: int, c0: float, c1: float) -> ScaledComplex:
    """Maclaurin coefficient of the solution of ``y'' = z y`` with ``y(0)=c0, y'(0)=c1``.

    The recurrence ``c_{k+3} = c_k / ((k+3)(k+2))`` telescopes into
    ``c_{3j} = c0 Gamma(2/3) / (9^j j! Gamma(j+2/3))`` and
    ``c_{3j+1} = c1 Gamma(4/3) / (9^j j! Gamma(j+4/3))``.
    """
    j, rem = divmod(n, 3)
    if rem == 2:
        return ZERO
    c, shift = (c0, 2.0 / 3.0) if rem == 0 else (c1, 4.0 / 3.0)
    if c == 0:
        return ZERO
    log_abs = (math.log(abs(c)) + math.lgamma(shift) - j * math.log(9.0) - math.lgamma(j + 1)
               - math.lgamma(j + shift))
    return _signed_log(math.copysign(1.0, c), log_abs)


def _airy_entry(which: str):
    if which == "ai":
        c0, c1 = _AI0, _AI1

        def log_eval(z):
            ai, aip, _, _ = special.airye(z)
            with np.errstate(divide="ignore", invalid="ignore"):
                return np.log(ai) - 2.0 / 3.0 * z * np.sqrt(z)

        def log_der(z):
            ai, aip, _, _ = special.airye(z)
            return aip / ai

        rays = (2 * math.pi / 3, -2 * math.pi / 3)
        guess = lambda n: n ** (2.0 / 3.0) * complex(math.cos(2 * math.pi / 3), math.sin(2 * math.pi / 3))
        ray = 2 * math.pi / 3
    else:
        c0, c1 = _BI0, _BI1

        def log_eval(z):
            _, _, bi, bip = special.airye(z)
            with np.errstate(divide="ignore", invalid="ignore"):
                return np.log(bi) + np.abs((2.0 / 3.0 * z * np.sqrt(z)).real)

        def log_der(z):
            _, _, bi, bip = special.airye(z)
            return bip / bi

        rays = (2 * math.pi / 3, 0.0, -2 * math.pi / 3)
        # for small n only the off-axis saddle reproduces the published radius
        guess = lambda n: n ** (2.0 / 3.0) * complex(math.cos(2 * math.pi / 3), math.sin(2 * math.pi / 3))
        ray = 2 * math.pi / 3
    name = f"airy_{which}"
    f = AnalyticFunction(name, log_evaluate=log_eval, log_derivative=log_der, order=1.5,
                         type_=2.0 / 3.0, saddle_rays=rays, saddle_guess=guess)
    return CatalogEntry(name, f, lambda n: airy_coefficient(n, c0, c1),
                        {"R": math.inf, "rho": 1.5, "tau": 2.0 / 3.0, "saddle_ray": ray})


def _bell_entry():
    f = AnalyticFunction("bell", evaluate=lambda z: np.exp(np.expm1(z)), log_evaluate=np.expm1,
                         log_derivative=np.exp, order=math.inf, nonnegative_coefficients=True)
    oracle = lambda n: _signed_log(1.0, math.log(bell_number(n)) - math.lgamma(n + 1))
    return CatalogEntry("bell", f, oracle, {"R": math.inf, "rho": math.inf, "tau": None, "saddle_ray": 0.0},
                        "exp(exp(z)-1)")


def _rgamma_guess(n: int) -> complex:
    return complex(np.exp(lambert_w0_complex(0.5 - n)))


def _rgamma_entry():
    f = AnalyticFunction("rgamma", log_evaluate=log_rgamma, log_derivative=lambda z: -special.psi(z),
                         order=1.0, type_=math.inf, saddle_rays=(math.pi / 2,),
                         saddle_guess=_rgamma_guess)
    return CatalogEntry("rgamma", f, None,
                        {"R": math.inf, "rho": 1.0, "tau": math.inf, "saddle_ray": None})


def _qpoch_entry(q: float = 0.5):
    if not 0 < q < 1:
        raise DomainError("qpochhammer needs 0 < q < 1")
    logq = math.log(q)

    def terms(z):
        zmax = float(np.max(np.abs(z))) if np.size(z) else 1.0
        K = max(1, int(math.ceil(math.log(1e-18 / max(zmax, 1e-300)) / logq)) + 1)
        return q ** np.arange(K)

    def log_eval(z):
        out = np.zeros_like(z)
        for qk in terms(z):
            with np.errstate(divide="ignore"):
                out = out + np.log1p(z * qk)
        return out

    def log_der(z):
        out = np.zeros_like(z)
        for qk in terms(z):
            out = out + qk / (1.0 + z * qk)
        return out

    def oracle(n):
        s = n * (n - 1) / 2 * logq - math.fsum(math.log1p(-q ** i) for i in range(1, n + 1))
        return _signed_log(1.0, s)

    f = AnalyticFunction(f"qpochhammer:{q:g}", log_evaluate=log_eval, log_derivative=log_der,
                         order=0.0, nonnegative_coefficients=True)
    return CatalogEntry(f.name, f, oracle, {"R": math.inf, "rho": 0.0, "tau": None, "saddle_ray": 0.0,
                                            "q": q})


def _fbeta_entry(beta: float = -1.0):
    beta = float(beta)
    if beta >= 0 and beta == int(beta):
        raise DomainError("f_beta: beta must not be a nonnegative integer")

    def log_eval(z):
        with np.errstate(divide="ignore"):
            return beta * np.log1p(-z)

    def oracle(n):
        # a_n = prod_{k=1}^n (k-1-beta)/k
        if n == 0:
            return _signed_log(1.0, 0.0)
        factors = [k - 1 - beta for k in range(1, n + 1)]
        sign = -1.0 if sum(x < 0 for x in factors) % 2 else 1.0
        log_abs = math.fsum(math.log(abs(x)) for x in factors) - math.lgamma(n + 1)
        return _signed_log(sign, log_abs)

    name = f"f_beta:{beta:g}"
    f = AnalyticFunction(name, evaluate=lambda z: np.power(1.0 - z, beta), log_evaluate=log_eval,
                         log_derivative=lambda z: -beta / (1.0 - z), radius_of_convergence=1.0,
                         darboux_beta=beta, nonnegative_coefficients=beta < 0)
    frac = Fraction(beta).limit_denominator(1000)
    expr = f"(1-z)^({frac.numerator}/{frac.denominator})" if float(frac) == beta else None
    return CatalogEntry(name, f, oracle, {"R": 1.0, "darboux": (beta, 1.0)}, expr)


def _sec6_entry():
    def log_eval(z):
        return -6.0 * _log_cos(z)

    f = AnalyticFunction("sec6", evaluate=lambda z: np.cos(z) ** -6, log_evaluate=log_eval,
                         log_derivative=lambda z: 6.0 * np.tan(z), radius_of_convergence=math.pi / 2,
                         darboux_beta=-6.0, nonnegative_coefficients=True)
    return CatalogEntry("sec6", f, lambda n: _from_fraction(sec6_coefficient(n)),
                        {"R": math.pi / 2, "darboux": (-6.0, math.pi / 2)}, "sec(z)^6")


def _bernoulli_entry():
    def evaluate(z):
        with np.errstate(invalid="ignore", divide="ignore"):
            out = z / np.expm1(z)
        return np.where(z == 0, 1.0 + 0j, out)

    def oracle(n):
        return _from_fraction(bernoulli_number(n) / math.factorial(n))

    f = AnalyticFunction("bernoulli_gen", evaluate=evaluate, radius_of_convergence=2 * math.pi,
                         darboux_beta=-1.0)
    return CatalogEntry("bernoulli_gen", f, oracle,
                        {"R": 2 * math.pi, "darboux": (-1.0, 2j * math.pi)}, "z/(exp(z)-1)")


def fornberg_log_coefficient(n: int) -> Fraction:
    """Exact a_n of ``(1+z)^10 log(1+z)`` by convolving the two series."""
    total = Fraction(0)
    for j in range(0, min(10, n - 1) + 1):
        k = n - j
        total += Fraction(math.comb(10, j) * (-1) ** (k - 1), k)
    return total


def _fornberg_log_entry():
    def evaluate(z):
        w = 1.0 + z
        with np.errstate(divide="ignore", invalid="ignore"):
            out = w ** 10 * np.log(w)
        return np.where(w == 0, 0j, out)

    f = AnalyticFunction("fornberg_log", evaluate=evaluate, radius_of_convergence=1.0)
    return CatalogEntry("fornberg_log", f, lambda n: _from_fraction(fornberg_log_coefficient(n)),
                        {"R": 1.0, "singularity": -1.0}, "(1+z)^10*log(1+z)")


def _fornberg_shift_entry():
    f = AnalyticFunction("fornberg_shift", evaluate=lambda z: 1e6 + 1.0 / (1.0 - z),
                         radius_of_convergence=1.0, darboux_beta=-1.0, nonnegative_coefficients=True)
    oracle = lambda n: ScaledComplex.from_complex(1e6 + 1.0 if n == 0 else 1.0)
    return CatalogEntry("fornberg_shift", f, oracle, {"R": 1.0, "darboux": (-1.0, 1.0)}, "10^6 + 1/(1-z)")


def _int_param(p):
    return int(p) if p is not None else 0


_BUILDERS = {
    "exp": (lambda p: _exp_entry(), None),
    "cos": (lambda p: _cos_entry(), None),
    "sin": (lambda p: _sin_entry(), None),
    "bessel_i": (lambda p: _bessel_i_entry(_int_param(p)), "0"),
    "bessel_j": (lambda p: _bessel_j_entry(_int_param(p)), "0"),
    "bessel_scaled": (lambda p: _bessel_scaled_entry(_int_param(p)), "0"),
    "erf": (lambda p: _erf_entry(), None),
    "exp_neg_sq": (lambda p: _gauss_entry(), None),
    "airy_ai": (lambda p: _airy_entry("ai"), None),
    "airy_bi": (lambda p: _airy_entry("bi"), None),
    "bell": (lambda p: _bell_entry(), None),
    "rgamma": (lambda p: _rgamma_entry(), None),
    "qpochhammer": (lambda p: _qpoch_entry(float(p) if p is not None else 0.5), "0.5"),
    "f_beta": (lambda p: _fbeta_entry(float(Fraction(p)) if p is not None else -1.0), "-1"),
    "sec6": (lambda p: _sec6_entry(), None),
    "bernoulli_gen": (lambda p: _bernoulli_entry(), None),
    "fornberg_log": (lambda p: _fornberg_log_entry(), None),
    "fornberg_shift": (lambda p: _fornberg_shift_entry(), None),
}

_ALIASES = {"bernoulli": "bernoulli_gen", "ai": "airy_ai", "bi": "airy_bi", "gauss": "exp_neg_sq"}


def names() -> list:
    return sorted(_BUILDERS)


def lookup(name: str) -> CatalogEntry:
    """Return the entry for ``name`` (``base`` or ``base:param``)."""
    base, _, param = name.strip().partition(":")
    base = _ALIASES.get(base, base)
    if base not in _BUILDERS:
        raise UnknownFunctionError(f"unknown function {name!r}; known: {', '.join(names())}")
    builder, _default = _BUILDERS[base]
    if param and _default is None:
        raise UnknownFunctionError(f"function {base!r} takes no parameter")
    try:
        return builder(param or None)
    except (ValueError, ZeroDivisionError) as exc:
        if isinstance(exc, DomainError):
            raise
        raise UnknownFunctionError(f"bad parameter for {base!r}: {param!r}") from exc


def catalog() -> list:
    """Every entry at its default parameter."""
    return [lookup(n) for n in names()]
