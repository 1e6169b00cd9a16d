"""Asymptotic estimates of the node count m needed for a relative accuracy eps.

Each estimate drops the (1 + o(1)) factor of its bound, so it is an
asymptotic estimate rather than a guarantee. The raw value is kept next to
the integer recommendation ``max(ceil(m_estimate), n + 1)``.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass
from typing import Optional

from .errors import DomainError
from .sfun.lambert import lambert_w0


class Regime(str, enum.Enum):
    FINITE_R = "finite_R"
    ENTIRE_ORDER_TYPE = "entire_order_type"
    PRG_QUASIOPTIMAL = "prg_quasioptimal"
    DARBOUX_SUBOPTIMAL = "darboux_suboptimal"


@dataclass(frozen=True)
class NodeBudget:
    m_estimate: float
    regime: Regime
    sampling_floor: int = 1

    @property
    def recommendation(self) -> int:
        est = math.ceil(self.m_estimate) if math.isfinite(self.m_estimate) else self.m_estimate
        return max(est, self.sampling_floor)


def _log_inv(eps) -> float:
    """``log(1/eps)``; accepts a float, or a string like ``"1e-1000"`` below double range."""
    if isinstance(eps, str):
        mant, _, exp = eps.lower().partition("e")
        m = float(mant)
        k = int(exp) if exp else 0
        if not 0 < m:
            raise DomainError("eps must lie in (0, 1)")
        value = -(math.log(m) + k * math.log(10.0))
    else:
        eps = float(eps)
        if not 0 < eps < 1:
            raise DomainError(f"eps must lie in (0, 1), got {eps!r}")
        value = -math.log(eps)
    if not value > 0:
        raise DomainError("eps must lie in (0, 1)")
    return value


def nodes_finite_R(eps, r: float, R: float, n: int = 0) -> NodeBudget:
    """``log(1/eps) / log(R/r)`` for f analytic in the disk of radius ``R``."""
    if not (0 < r < R < math.inf):
        raise DomainError(f"need 0 < r < R < inf, got r={r!r}, R={R!r}")
    return NodeBudget(_log_inv(eps) / math.log(R / r), Regime.FINITE_R, n + 1)


def nodes_entire(eps, r: float, rho: float, tau: float, n: int = 0) -> NodeBudget:
    """``rho L / W(L / (e tau r^rho))`` with ``L = log(1/eps)``, for entire f of order rho and type tau."""
    if not (r > 0 and rho > 0 and tau > 0):
        raise DomainError("r, rho and tau must be positive")
    L = _log_inv(eps)
    arg = L / (math.e * tau * r ** rho)
    if arg <= -math.exp(-1.0):
        raise DomainError("Lambert W argument below -1/e")
    return NodeBudget(rho * L / lambert_w0(arg), Regime.ENTIRE_ORDER_TYPE, n + 1)


def nodes_prg_quasioptimal(eps, n: int, rho: float) -> NodeBudget:
    """``e n + rho log(1/eps)`` at the quasi-optimal radius of a function of perfectly regular growth."""
    if n < 0 or not rho > 0:
        raise DomainError("need n >= 0 and rho > 0")
    return NodeBudget(math.e * n + rho * _log_inv(eps), Regime.PRG_QUASIOPTIMAL, n + 1)


def nodes_darboux(eps, n: int, beta: float, alpha: Optional[float] = None, R: float = 1.0
                  ) -> NodeBudget:
    """Node estimates at the radii chosen from an algebraic singularity ``(1 - z/z0)^beta``.

    ``alpha`` selects the suboptimal radius ``R (1 - alpha/n)`` for ``beta = -1``.
    For ``beta > -1`` the radius is essentially ``R`` and the finite-R estimate
    at ``R (1 - 1e-6)`` is returned with a warning.
    """
    if n < 2:
        raise DomainError("nodes_darboux needs n >= 2")
    L = _log_inv(eps)
    if beta > -1:
        warnings.warn("beta > -1: radius at the boundary, node estimate is only indicative",
                      RuntimeWarning, stacklevel=2)
        return NodeBudget(L / -math.log1p(-1e-6), Regime.FINITE_R, n + 1)
    if beta == -1:
        if alpha is not None:
            if not alpha > 0:
                raise DomainError("alpha must be positive")
            est = n / alpha * L
        else:
            est = n * math.log(n) * L
    else:
        est = n / (-beta - 1) * L
    return NodeBudget(est, Regime.DARBOUX_SUBOPTIMAL, n + 1)
