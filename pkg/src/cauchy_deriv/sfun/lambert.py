"""Principal branch of the Lambert W function, ``W(x) exp(W(x)) = x``."""

from __future__ import annotations

import cmath
import math

from ..errors import ConvergenceError, DomainError

_INV_E = math.exp(-1.0)
_MAX_ITER = 64


def _series_small(x):
    # W(x) = sum_{k>=1} (-1)^(k-1) k^(k-1) x^k / k!, |x| < 1/e
    total = 0.0 * x
    term_scale = 1.0
    for k in range(1, 25):
        term_scale = (-1) ** (k - 1) * k ** (k - 1) / math.factorial(k)
        total += term_scale * x ** k
    return total


def _branch_point_seed(x):
    p = (2.0 * (math.e * x + 1.0)) ** 0.5
    return -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p ** 3


def _halley(w, x, cplx: bool):
    exp = cmath.exp if cplx else math.exp
    for _ in range(_MAX_ITER):
        ew = exp(w)
        f = w * ew - x
        wp1 = w + 1.0
        if wp1 == 0:
            return w
        denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1)
        if denom == 0:
            return w
        step = f / denom
        w = w - step
        if abs(step) <= 4e-16 * (1.0 + abs(w)):
            return w
    raise ConvergenceError(f"Lambert W did not converge for {x!r}", last=w)


def lambert_w0(x: float) -> float:
    """Real principal branch ``W0`` on ``[-1/e, inf)``.

    Seeds: the Taylor series for ``|x| < 0.2``, ``log x - log log x`` for
    ``x > 3``, the branch-point expansion near ``-1/e``; then Halley steps.
    """
    x = float(x)
    if math.isnan(x):
        raise DomainError("lambert_w0 of nan")
    if x < -_INV_E:
        if x > -_INV_E - 1e-15:
            return -1.0
        raise DomainError(f"lambert_w0 requires x >= -1/e, got {x!r}")
    if x == 0.0:
        return 0.0
    if math.isinf(x):
        return math.inf
    if x == -_INV_E:
        return -1.0
    if abs(x) < 0.2:
        w = _series_small(x)
    elif x > 3.0:
        lx = math.log(x)
        w = lx - math.log(lx)
    elif x < -0.25:
        w = _branch_point_seed(x)
    else:
        lx = math.log1p(x)
        w = lx * (1.0 - math.log1p(lx) / (2.0 + lx))
    return float(_halley(w, x, cplx=False))


def lambert_w0_complex(z: complex) -> complex:
    """Principal branch of W in the complex plane.

    For real ``z < -1/e`` the value with positive imaginary part is returned
    (the limit from the upper half plane).
    """
    z = complex(z)
    if z == 0:
        return 0j
    if z == -_INV_E:
        return -1 + 0j
    if abs(z + _INV_E) < 0.3:
        p = cmath.sqrt(2.0 * (math.e * z + 1.0))
        if z.imag == 0 and z.real < -_INV_E:
            p = complex(0.0, abs(p.imag))
        w = -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p ** 3
    elif abs(z) < 0.3:
        w = z - z * z + 1.5 * z ** 3
    else:
        lz = cmath.log(z)
        w = lz - cmath.log(lz) if abs(lz) > 1e-3 else z
        if abs(z) < 3.0:
            # log log z is poor for moderate z; blend toward log(1+z)
            w = 0.5 * (w + cmath.log(1.0 + z))
    w = _halley(w, z, cplx=True)
    if z.imag == 0 and z.real < -_INV_E and w.imag < 0:
        w = w.conjugate()
    return complex(w)
