"""Complex numbers carried as ``mantissa * e**exponent``.

Values on large circles easily leave the range of hardware doubles
(``|1/Gamma(z)|`` reaches ``e**1342`` on the circles we care about), so all
ring arithmetic is done on this representation and converted to plain
floats only for presentation.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

_LOG10_E = 1.0 / math.log(10.0)


@dataclass(frozen=True)
class ScaledComplex:
    """A complex value ``mantissa * exp(exponent)``.

    ``exponent`` is an integer-valued float and ``1 <= |mantissa| < e``;
    zero is stored as ``(0, 0)``. Use the constructors below rather than the
    raw initializer, which does not normalize.
    """

    mantissa: complex
    exponent: float

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_parts(cls, mantissa: complex, exponent: float = 0.0) -> "ScaledComplex":
        mantissa = complex(mantissa)
        if mantissa == 0:
            return ZERO
        if not (cmath.isfinite(mantissa) and math.isfinite(exponent)):
            raise OverflowError(f"non-finite scaled value {mantissa!r} * e^{exponent!r}")
        a = math.log(abs(mantissa))
        k = math.floor(a)
        if k != 0:
            mantissa = mantissa * math.exp(-k)
        exponent = float(exponent) + k
        # one correction step for rounding at the interval ends
        m = abs(mantissa)
        if m >= math.e:
            mantissa /= math.e
            exponent += 1.0
        elif m < 1.0:
            mantissa *= math.e
            exponent -= 1.0
        e_int = math.floor(exponent)
        if e_int != exponent:
            # keep the exponent integral; fold the fraction into the mantissa
            return cls.from_parts(mantissa * math.exp(exponent - e_int), e_int)
        return cls(mantissa, exponent)

    @classmethod
    def from_complex(cls, value: complex) -> "ScaledComplex":
        return cls.from_parts(value, 0.0)

    @classmethod
    def from_log(cls, log_value: complex) -> "ScaledComplex":
        """The value ``exp(log_value)`` without ever forming it as a float."""
        log_value = complex(log_value)
        if log_value.real == -math.inf:
            return ZERO
        k = math.floor(log_value.real)
        mantissa = cmath.exp(complex(log_value.real - k, log_value.imag))
        return cls.from_parts(mantissa, k)

    # -- queries ------------------------------------------------------------

    def is_zero(self) -> bool:
        return self.mantissa == 0

    def log_abs(self) -> float:
        if self.mantissa == 0:
            return -math.inf
        return math.log(abs(self.mantissa)) + self.exponent

    def log(self) -> complex:
        if self.mantissa == 0:
            raise ValueError("log of zero")
        return cmath.log(self.mantissa) + self.exponent

    def abs(self) -> "ScaledComplex":
        return ScaledComplex.from_parts(abs(self.mantissa), self.exponent)

    def to_complex(self) -> complex:
        """Plain complex value; overflows to inf and underflows to 0."""
        if self.mantissa == 0:
            return 0j
        if self.exponent > 709.0:
            scale = math.inf if self.exponent > 711.0 else math.exp(self.exponent)
            re = self.mantissa.real * scale if self.mantissa.real else 0.0
            im = self.mantissa.imag * scale if self.mantissa.imag else 0.0
            return complex(re, im)
        if self.exponent < -745.0:
            return 0j
        return self.mantissa * math.exp(self.exponent)

    def to_float(self) -> float:
        """Real part as a float (for real-valued quantities)."""
        return self.to_complex().real

    def decimal_parts(self) -> tuple[complex, int]:
        """``(m, k)`` with value ``m * 10**k`` and ``1 <= |m| < 10``."""
        if self.mantissa == 0:
            return 0j, 0
        l10 = self.log_abs() * _LOG10_E
        k = math.floor(l10)
        phase = self.mantissa / abs(self.mantissa)
        m = phase * 10.0 ** (l10 - k)
        if abs(m) >= 10.0:
            m /= 10.0
            k += 1
        return m, k

    # -- arithmetic ---------------------------------------------------------

    def __mul__(self, other) -> "ScaledComplex":
        other = _coerce(other)
        return ScaledComplex.from_parts(self.mantissa * other.mantissa,
                                        self.exponent + other.exponent)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "ScaledComplex":
        other = _coerce(other)
        if other.mantissa == 0:
            raise ZeroDivisionError("division by scaled zero")
        return ScaledComplex.from_parts(self.mantissa / other.mantissa,
                                        self.exponent - other.exponent)

    def __rtruediv__(self, other) -> "ScaledComplex":
        return _coerce(other) / self

    def __add__(self, other) -> "ScaledComplex":
        other = _coerce(other)
        if self.mantissa == 0:
            return other
        if other.mantissa == 0:
            return self
        if self.exponent >= other.exponent:
            big, small = self, other
        else:
            big, small = other, self
        shift = small.exponent - big.exponent
        if shift < -800.0:
            return big
        return ScaledComplex.from_parts(big.mantissa + small.mantissa * math.exp(shift),
                                        big.exponent)

    __radd__ = __add__

    def __neg__(self) -> "ScaledComplex":
        return ScaledComplex(-self.mantissa, self.exponent)

    def __sub__(self, other) -> "ScaledComplex":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "ScaledComplex":
        return _coerce(other) - self

    def scale_log(self, log_factor: float) -> "ScaledComplex":
        """Multiply by ``exp(log_factor)`` for real ``log_factor``."""
        if self.mantissa == 0:
            return self
        return ScaledComplex.from_parts(self.mantissa, self.exponent + log_factor)

    def __format__(self, spec: str) -> str:
        return format_scaled(self)

    def __str__(self) -> str:
        return format_scaled(self)


ZERO = ScaledComplex(0j, 0.0)
ONE = ScaledComplex(1 + 0j, 0.0)


def _coerce(value) -> ScaledComplex:
    if isinstance(value, ScaledComplex):
        return value
    return ScaledComplex.from_complex(complex(value))


def relative_difference(a: ScaledComplex, b: ScaledComplex) -> float:
    """``|a - b| / |a|`` evaluated without leaving scaled arithmetic."""
    if a.is_zero():
        return 0.0 if b.is_zero() else math.inf
    d = a - b
    if d.is_zero():
        return 0.0
    return math.exp(d.log_abs() - a.log_abs())


def _fmt_real(x: float) -> str:
    return repr(float(x)) if x == x else "nan"


def format_scaled(value: ScaledComplex, digits: int = 17) -> str:
    """Render as a plain double when in ``[1e-300, 1e300]``, else ``m e±X``.

    Real values drop the imaginary part; complex values out of range are
    written as ``(re+imj) e±X``.
    """
    if value.is_zero():
        return "0.0"
    l10 = value.log_abs() * _LOG10_E
    if -300.0 <= l10 <= 300.0:
        c = value.to_complex()
        if c.imag == 0:
            return _fmt_real(c.real)
        return repr(c)
    m, k = value.decimal_parts()
    if m.imag == 0:
        body = f"{m.real:.{digits - 1}e}".split("e")[0]
    else:
        body = f"({m.real:.{digits - 1}g}{m.imag:+.{digits - 1}g}j)"
    return f"{body}e{k:+d}"
