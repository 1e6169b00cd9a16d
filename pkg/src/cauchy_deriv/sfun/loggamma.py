"""Complex log-gamma and digamma on the principal branch.

Backed by :func:`scipy.special.loggamma`, whose imaginary part is the
analytic continuation of ``log Gamma`` from the positive real axis (it is
continuous everywhere off the negative real axis).
"""

from __future__ import annotations

import numpy as np
from scipy import special

from ..errors import DomainError


def _pole_mask(z: np.ndarray) -> np.ndarray:
    return (z.imag == 0) & (z.real <= 0) & (z.real == np.round(z.real))


def log_gamma_complex(z):
    """Principal ``log Gamma(z)``; raises at the poles ``0, -1, -2, ...``."""
    arr = np.asarray(z, dtype=complex)
    if _pole_mask(arr).any():
        raise DomainError("log_gamma_complex: pole of Gamma at a nonpositive integer")
    out = special.loggamma(arr)
    return complex(out) if np.ndim(out) == 0 else out


def log_rgamma(z):
    """``log(1/Gamma(z))`` for arrays; ``-inf`` (a zero of ``1/Gamma``) at the poles."""
    arr = np.asarray(z, dtype=complex)
    with np.errstate(all="ignore"):
        out = -special.loggamma(arr)
    poles = _pole_mask(arr)
    if poles.any():
        out = np.where(poles, complex(-np.inf, 0.0), out)
    return out


def digamma_complex(z):
    arr = np.asarray(z, dtype=complex)
    out = special.psi(arr)
    return complex(out) if np.ndim(out) == 0 else out
