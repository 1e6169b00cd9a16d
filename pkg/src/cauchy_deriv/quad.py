"""Trapezoidal sums for Cauchy integrals on circles.

The m-point sum

    a_n(r, m) = 1/(m r^n) * sum_j exp(-2 pi i j n / m) f(r exp(2 pi i j / m))

approximates the n-th Taylor coefficient of ``f``. Everything here works on
a :class:`SampleRing` whose samples share one scale factor, so a ring can
hold values like ``e**1342`` without overflow, and every reduction is a
correctly rounded ``math.fsum`` in index order.
"""

from __future__ import annotations

import enum
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import DomainError, EvaluationError
from .scaled import ScaledComplex

ArrayFn = Callable[[np.ndarray], np.ndarray]

_LN2 = math.log(2.0)
_PARALLEL_MIN_NODES = 4096


@dataclass(frozen=True)
class AnalyticFunction:
    """An analytic function together with what we know about its growth.

    ``evaluate`` (and the optional ``log_evaluate``, ``derivative`` and
    ``log_derivative``) take and return complex numpy arrays. A function that
    only has a ``log_evaluate`` path may pass ``evaluate=None``; it is then
    derived from the log path.

    ``order``/``type_`` are ``None`` when unknown; ``order=inf`` marks
    infinite order. ``saddle_rays`` lists the directions of predominant growth
    (angles), ``saddle_guess`` optionally maps ``n`` to a starting point for
    the saddle-point solve, and ``darboux_beta`` is the exponent of the
    algebraic singularity on the circle of convergence.
    """

    name: str
    evaluate: Optional[ArrayFn] = None
    log_evaluate: Optional[ArrayFn] = None
    derivative: Optional[ArrayFn] = None
    log_derivative: Optional[ArrayFn] = None
    radius_of_convergence: float = math.inf
    order: Optional[float] = None
    type_: Optional[float] = None
    nonnegative_coefficients: bool = False
    real_coefficients: bool = True
    saddle_rays: tuple = (0.0,)
    saddle_guess: Optional[Callable[[int], complex]] = None
    darboux_beta: Optional[float] = None

    def __post_init__(self):
        if self.evaluate is None and self.log_evaluate is None:
            raise ValueError("an AnalyticFunction needs evaluate or log_evaluate")
        if not self.radius_of_convergence > 0:
            raise ValueError("radius of convergence must be positive")

    @property
    def is_entire(self) -> bool:
        return math.isinf(self.radius_of_convergence)

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        if self.evaluate is not None:
            return self.evaluate(z)
        with np.errstate(over="ignore", under="ignore"):
            return np.exp(self.log_evaluate(z))

    def log(self, z):
        """Continuous-branch ``log f`` (falls back to the principal log)."""
        z = np.asarray(z, dtype=complex)
        if self.log_evaluate is not None:
            return self.log_evaluate(z)
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.log(self.evaluate(z))


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("CAUCHY_DERIV_THREADS", "1")))
    except ValueError:
        return 1


def _apply(fn: ArrayFn, z: np.ndarray) -> np.ndarray:
    """Evaluate ``fn`` on ``z``, optionally in ordered chunks across threads."""
    threads = _threads()
    with np.errstate(all="ignore"):
        if threads == 1 or z.size < _PARALLEL_MIN_NODES:
            return np.asarray(fn(z), dtype=complex).reshape(z.shape)
        chunks = np.array_split(z, threads)
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(fn, chunks))
        return np.concatenate([np.asarray(p, dtype=complex).reshape(c.shape)
                               for p, c in zip(parts, chunks)])


def _node_angles(indices: np.ndarray, m: int) -> np.ndarray:
    return 2.0 * math.pi * indices / m


def _nodes(r: float, indices: np.ndarray, m: int) -> np.ndarray:
    theta = _node_angles(indices, m)
    return r * (np.cos(theta) + 1j * np.sin(theta))


@dataclass(frozen=True)
class SampleRing:
    """Samples ``f(r exp(2 pi i j/m))`` for ``j = 0..m-1``.

    Exactly one of ``logs`` (values of ``log f``) and ``raw`` (values of
    ``f``) is stored. ``mantissas * exp(common_scale)`` gives the samples.
    """

    radius: float
    count: int
    logs: Optional[np.ndarray] = field(default=None, repr=False)
    raw: Optional[np.ndarray] = field(default=None, repr=False)
    scale_offset: float = 0.0

    @cached_property
    def _scaled(self) -> tuple:
        if self.logs is not None:
            re = self.logs.real
            finite = re[np.isfinite(re)]
            scale = float(finite.max()) if finite.size else 0.0
            with np.errstate(under="ignore"):
                mant = np.exp(self.logs - scale)
            mant[~np.isfinite(re)] = 0.0
            return mant, scale
        peak = float(np.max(np.abs(self.raw))) if self.count else 0.0
        if peak == 0.0 or not math.isfinite(peak):
            return self.raw.copy(), self.scale_offset
        k = math.frexp(peak)[1]
        mant = np.ldexp(self.raw.real, -k) + 1j * np.ldexp(self.raw.imag, -k)
        return mant, k * _LN2 + self.scale_offset

    @property
    def mantissas(self) -> np.ndarray:
        return self._scaled[0]

    @property
    def common_scale(self) -> float:
        return self._scaled[1]

    @property
    def samples(self) -> list:
        scale = self.common_scale
        return [ScaledComplex.from_parts(v, scale) for v in self.mantissas]

    @property
    def nodes(self) -> np.ndarray:
        return _nodes(self.radius, np.arange(self.count), self.count)

    def doubled(self, f: AnalyticFunction) -> "SampleRing":
        """The ring with ``2m`` nodes; the existing samples become the even ones."""
        m2 = 2 * self.count
        odd = np.arange(1, m2, 2)
        fresh = _evaluate_ring(f, self.radius, odd, m2)
        old = self.logs if self.logs is not None else self.raw
        merged = np.empty(m2, dtype=complex)
        merged[0::2] = old
        merged[1::2] = fresh
        if self.logs is not None:
            return SampleRing(self.radius, m2, logs=merged)
        return SampleRing(self.radius, m2, raw=merged, scale_offset=self.scale_offset)


def _evaluate_ring(f: AnalyticFunction, r: float, indices: np.ndarray, m: int) -> np.ndarray:
    z = _nodes(r, indices, m)
    if f.log_evaluate is not None:
        values = _apply(f.log_evaluate, z)
        bad = np.isnan(values.real) | np.isnan(values.imag) | (values.real == np.inf)
    else:
        values = _apply(f.evaluate, z)
        bad = ~np.isfinite(values)
    if bad.any():
        j = int(indices[np.argmax(bad)])
        raise EvaluationError(
            f"{f.name}: non-finite value at node {j} of {m} "
            f"(angle {2.0 * math.pi * j / m:.17g}, radius {r:.17g})")
    return values


def _check_radius(f: AnalyticFunction, r: float) -> None:
    if not (r > 0 and math.isfinite(r)):
        raise DomainError(f"radius must be positive and finite, got {r!r}")
    if r > f.radius_of_convergence:
        raise DomainError(
            f"radius outside disk of analyticity: r={r!r} > R={f.radius_of_convergence!r}")


def sample_ring(f: AnalyticFunction, r: float, m: int) -> SampleRing:
    """Evaluate ``f`` at the ``m`` equispaced nodes of the circle ``|z| = r``.

    Uses the log path when ``f`` has one. ``r`` may equal a finite radius of
    convergence only for functions that stay finite on the boundary circle.
    """
    if m < 1:
        raise ValueError(f"node count must be >= 1, got {m}")
    _check_radius(f, r)
    values = _evaluate_ring(f, r, np.arange(m), m)
    if f.log_evaluate is not None:
        return SampleRing(float(r), int(m), logs=values)
    return SampleRing(float(r), int(m), raw=values)


@lru_cache(maxsize=8)
def _twiddle_table(m: int) -> np.ndarray:
    theta = _node_angles(np.arange(m), m)
    table = np.cos(theta) - 1j * np.sin(theta)
    table.flags.writeable = False
    return table


def _weighted_sum(ring: SampleRing, n: int) -> complex:
    m = ring.count
    k = (np.arange(m, dtype=np.int64) * (n % m)) % m
    terms = _twiddle_table(m)[k] * ring.mantissas
    return complex(math.fsum(terms.real), math.fsum(terms.imag))


def _abs_sum(ring: SampleRing) -> float:
    return math.fsum(np.abs(ring.mantissas))


def trapezoidal_coefficient(ring: SampleRing, n: int) -> ScaledComplex:
    """The trapezoidal approximation ``a_n(r, m)`` of the n-th coefficient."""
    if n < 0:
        raise ValueError("coefficient index must be nonnegative")
    s = _weighted_sum(ring, n) / ring.count
    return ScaledComplex.from_parts(s, 0.0).scale_log(ring.common_scale - n * math.log(ring.radius))


def discrete_condition_number(ring: SampleRing, n: int) -> float:
    """``sum |f_j| / |sum exp(-2 pi i j n/m) f_j|``; ``inf`` on total cancelation."""
    den = abs(_weighted_sum(ring, n))
    if den == 0.0:
        return math.inf
    return _abs_sum(ring) / den


def mean_modulus(ring: SampleRing) -> ScaledComplex:
    """Trapezoidal approximation of the circle mean of ``|f|``."""
    return ScaledComplex.from_parts(_abs_sum(ring) / ring.count, 0.0).scale_log(ring.common_scale)


def mean_modulus_adaptive(f: AnalyticFunction, r: float, m: int = 64, rtol: float = 1e-13,
                          m_max: int = 2 ** 22) -> ScaledComplex:
    """Mean modulus with the node count doubled until it settles to ``rtol``."""
    ring = sample_ring(f, r, m)
    prev = mean_modulus(ring)
    while ring.count * 2 <= m_max:
        ring = ring.doubled(f)
        cur = mean_modulus(ring)
        if abs(math.expm1(cur.log_abs() - prev.log_abs())) <= rtol:
            return cur
        prev = cur
    return prev


def reference_log_condition_number(f: AnalyticFunction, exact_an, n: int, r: float,
                                   m: Optional[int] = None) -> float:
    """Natural log of :func:`reference_condition_number`; finite even beyond double range."""
    if not isinstance(exact_an, ScaledComplex):
        exact_an = ScaledComplex.from_complex(complex(exact_an))
    if exact_an.is_zero():
        raise DomainError("condition number undefined: exact coefficient is zero")
    if m is None:
        m1 = mean_modulus_adaptive(f, r)
    else:
        m1 = mean_modulus(sample_ring(f, r, m))
    return m1.log_abs() - exact_an.log_abs() - n * math.log(r)


def reference_condition_number(f: AnalyticFunction, exact_an, n: int, r: float,
                               m: Optional[int] = None) -> float:
    """``M1(r) / (|a_n| r^n)`` with ``a_n`` from a coefficient oracle.

    The denominator never comes out of a cancelling sum, so this resolves
    condition numbers far beyond ``1/eps``. With ``m=None`` the mean modulus
    is refined until converged. Values beyond double range come back as inf.
    """
    log_kappa = reference_log_condition_number(f, exact_an, n, r, m)
    return math.exp(log_kappa) if log_kappa < 709.0 else math.inf


class Status(str, enum.Enum):
    CONVERGED = "converged"
    MAX_NODES_REACHED = "max_nodes_reached"
    DEGENERATE_DENOMINATOR = "degenerate_denominator"


@dataclass(frozen=True)
class QuadratureOutcome:
    value: ScaledComplex
    m_used: int
    kappa_m: float
    rel_error_estimate: Optional[float]
    status: Status
    n: int = 0
    radius: float = math.nan
    derivative: bool = False

    @property
    def converged(self) -> bool:
        return self.status is Status.CONVERGED


def ring_from_values(radius: float, values: Sequence[complex]) -> SampleRing:
    """Wrap precomputed samples (in node order) as a ring."""
    arr = np.asarray(values, dtype=complex)
    if arr.ndim != 1 or arr.size < 1:
        raise ValueError("need a nonempty 1-d sequence of samples")
    return SampleRing(float(radius), int(arr.size), raw=arr.copy())


def ring_from_scaled(radius: float, samples: Sequence[ScaledComplex]) -> SampleRing:
    """A ring from scaled samples; a common exponent only moves ``common_scale``."""
    if not samples:
        raise ValueError("need at least one sample")
    base = max(s.exponent for s in samples if not s.is_zero()) if any(
        not s.is_zero() for s in samples) else 0.0
    arr = np.array([s.mantissa * math.exp(s.exponent - base) if not s.is_zero() else 0j
                    for s in samples], dtype=complex)
    return SampleRing(float(radius), len(samples), raw=arr, scale_offset=float(base))


def ring_from_logs(radius: float, logs: Sequence[complex]) -> SampleRing:
    arr = np.asarray(logs, dtype=complex)
    if arr.ndim != 1 or arr.size < 1:
        raise ValueError("need a nonempty 1-d sequence of log samples")
    return SampleRing(float(radius), int(arr.size), logs=arr.copy())
