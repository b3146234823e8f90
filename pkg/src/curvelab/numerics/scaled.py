"""Sign/log-magnitude arithmetic for quantities beyond double-precision range.

Finite-N kernel values grow like ``exp(N * O(1))`` and overflow a float for
N of a few hundred. :class:`ScaledReal` keeps the sign and the natural log of
the magnitude separately; :class:`ScaledComplex` pairs two of them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = ["ScaledReal", "ScaledComplex"]

_LN2 = math.log(2.0)


class ScaledReal:
    """Real number ``sign * exp(log_mag)``.

    Internally the magnitude is held as a float mantissa in [0.5, 1) and an
    unbounded integer power of two, so conversion from and back to a float is
    exact and addition rounds only once in the dominant term. ``log_mag`` is
    derived on demand and is ``-inf`` when ``sign == 0``.
    """

    __slots__ = ("sign", "_mant", "_exp2")

    def __init__(self, sign: int, log_mag: float = 0.0):
        sign = int(sign)
        if sign not in (-1, 0, 1):
            raise ValueError("sign must be -1, 0 or +1")
        if sign == 0:
            self._set(0, 0.0, 0)
            return
        if not math.isfinite(log_mag):
            raise ValueError("log_mag must be finite for a nonzero value")
        e2 = math.floor(log_mag / _LN2)
        mant, extra = math.frexp(math.exp(log_mag - e2 * _LN2))
        self._set(sign, mant, e2 + extra)

    def _set(self, sign, mant, exp2):
        object.__setattr__(self, "sign", sign)
        object.__setattr__(self, "_mant", mant)
        object.__setattr__(self, "_exp2", exp2)

    def __setattr__(self, name, value):
        raise AttributeError("ScaledReal is immutable")

    @classmethod
    def _raw(cls, sign: int, mant: float, exp2: int) -> "ScaledReal":
        obj = cls.__new__(cls)
        if sign == 0 or mant == 0.0:
            obj._set(0, 0.0, 0)
        else:
            m, extra = math.frexp(mant)
            obj._set(sign, m, int(exp2) + extra)
        return obj

    @property
    def log_mag(self) -> float:
        if self.sign == 0:
            return -math.inf
        return math.log(self._mant) + self._exp2 * _LN2

    # construction / conversion
    @classmethod
    def from_float(cls, v: float) -> "ScaledReal":
        v = float(v)
        if not math.isfinite(v):
            raise ValueError(f"cannot scale non-finite value {v}")
        if v == 0.0:
            return cls._raw(0, 0.0, 0)
        m, e = math.frexp(abs(v))
        return cls._raw(1 if v > 0 else -1, m, e)

    @classmethod
    def from_log(cls, sign: int, log_mag: float) -> "ScaledReal":
        return cls(int(sign), float(log_mag))

    @classmethod
    def zero(cls) -> "ScaledReal":
        return cls._raw(0, 0.0, 0)

    def to_float(self) -> float:
        """Convert to float; overflows to ``inf`` and underflows to 0."""
        if self.sign == 0:
            return 0.0
        if self._exp2 > 1024:
            return self.sign * math.inf
        if self._exp2 < -1080:
            return 0.0 * self.sign
        return self.sign * math.ldexp(self._mant, self._exp2)

    def __float__(self) -> float:
        return self.to_float()

    def __eq__(self, other) -> bool:
        if not isinstance(other, ScaledReal):
            return NotImplemented
        return (self.sign, self._mant, self._exp2) == (other.sign, other._mant, other._exp2)

    def __hash__(self) -> int:
        return hash((self.sign, self._mant, self._exp2))

    # algebra
    def __neg__(self) -> "ScaledReal":
        return ScaledReal._raw(-self.sign, self._mant, self._exp2)

    def __abs__(self) -> "ScaledReal":
        return ScaledReal._raw(abs(self.sign), self._mant, self._exp2)

    def __mul__(self, other) -> "ScaledReal":
        other = _as_scaled(other)
        s = self.sign * other.sign
        return ScaledReal._raw(s, self._mant * other._mant, self._exp2 + other._exp2)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "ScaledReal":
        other = _as_scaled(other)
        if other.sign == 0:
            raise ZeroDivisionError("ScaledReal division by zero")
        s = self.sign * other.sign
        return ScaledReal._raw(s, self._mant / other._mant, self._exp2 - other._exp2)

    def __rtruediv__(self, other) -> "ScaledReal":
        return _as_scaled(other) / self

    def __add__(self, other) -> "ScaledReal":
        other = _as_scaled(other)
        if self.sign == 0:
            return other
        if other.sign == 0:
            return self
        big, small = (self, other) if self._exp2 >= other._exp2 else (other, self)
        shift = small._exp2 - big._exp2
        # dominant term plus the (possibly underflowing) small correction
        total = big.sign * big._mant + small.sign * math.ldexp(small._mant, max(shift, -1100))
        if total == 0.0:
            return ScaledReal.zero()
        return ScaledReal._raw(1 if total > 0 else -1, abs(total), big._exp2)

    __radd__ = __add__

    def __sub__(self, other) -> "ScaledReal":
        return self + (-_as_scaled(other))

    def __rsub__(self, other) -> "ScaledReal":
        return _as_scaled(other) + (-self)

    def __pow__(self, k: int) -> "ScaledReal":
        if not isinstance(k, int):
            raise TypeError("only integer powers are supported")
        out = ScaledReal.from_float(1.0)
        base = self if k >= 0 else ScaledReal.from_float(1.0) / self
        for _ in range(abs(k)):
            out = out * base
        return out

    def ldexp_e(self, shift: float) -> "ScaledReal":
        """Multiply by ``exp(shift)``."""
        if self.sign == 0:
            return self
        return self * ScaledReal(1, shift)

    def __lt__(self, other) -> bool:
        return (self - _as_scaled(other)).sign < 0

    def __gt__(self, other) -> bool:
        return (self - _as_scaled(other)).sign > 0

    def __repr__(self) -> str:
        return f"ScaledReal(sign={self.sign}, log_mag={self.log_mag!r})"


def _as_scaled(v) -> ScaledReal:
    if isinstance(v, ScaledReal):
        return v
    return ScaledReal.from_float(v)


@dataclass(frozen=True)
class ScaledComplex:
    """Complex number stored as two :class:`ScaledReal` parts."""

    re: ScaledReal
    im: ScaledReal

    @classmethod
    def from_complex(cls, z: complex) -> "ScaledComplex":
        z = complex(z)
        return cls(ScaledReal.from_float(z.real), ScaledReal.from_float(z.imag))

    @classmethod
    def from_log(cls, log_z: complex) -> "ScaledComplex":
        """Build ``exp(log_z)`` for a complex logarithm ``log_z``."""
        mag = log_z.real
        c, s = math.cos(log_z.imag), math.sin(log_z.imag)
        return cls(
            ScaledReal.from_float(c).ldexp_e(mag) if c else ScaledReal.zero(),
            ScaledReal.from_float(s).ldexp_e(mag) if s else ScaledReal.zero(),
        )

    def log_abs(self) -> float:
        a, b = self.re.log_mag, self.im.log_mag
        m = max(a, b)
        if m == -math.inf:
            return -math.inf
        return m + 0.5 * math.log(math.exp(2 * (a - m)) + math.exp(2 * (b - m)))

    def to_complex(self) -> complex:
        return complex(self.re.to_float(), self.im.to_float())

    def __complex__(self) -> complex:
        return self.to_complex()

    def scaled_to(self, log_ref: float) -> complex:
        """Return ``self * exp(-log_ref)`` as an ordinary complex number."""
        return complex(self.re.ldexp_e(-log_ref).to_float(), self.im.ldexp_e(-log_ref).to_float())

    def __neg__(self) -> "ScaledComplex":
        return ScaledComplex(-self.re, -self.im)

    def conj(self) -> "ScaledComplex":
        return ScaledComplex(self.re, -self.im)

    def __add__(self, other: "ScaledComplex") -> "ScaledComplex":
        other = _as_scaled_complex(other)
        return ScaledComplex(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other) -> "ScaledComplex":
        return self + (-_as_scaled_complex(other))

    def __mul__(self, other) -> "ScaledComplex":
        if isinstance(other, (ScaledReal, int, float)):
            r = _as_scaled(other)
            return ScaledComplex(self.re * r, self.im * r)
        other = _as_scaled_complex(other)
        return ScaledComplex(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other) -> "ScaledComplex":
        if isinstance(other, (ScaledReal, int, float)):
            r = _as_scaled(other)
            return ScaledComplex(self.re / r, self.im / r)
        other = _as_scaled_complex(other)
        den = other.re * other.re + other.im * other.im
        num = self * other.conj()
        return ScaledComplex(num.re / den, num.im / den)


def _as_scaled_complex(v) -> ScaledComplex:
    if isinstance(v, ScaledComplex):
        return v
    if isinstance(v, ScaledReal):
        return ScaledComplex(v, ScaledReal.zero())
    return ScaledComplex.from_complex(v)
