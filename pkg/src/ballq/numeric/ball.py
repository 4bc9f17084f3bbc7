"""Complex balls (midpoint, radius) on top of mpmath.

Each operation rounds the midpoint at the context precision and adds a
bound for that rounding to the radius; radii are inflated slightly so that
their own rounding cannot lose enclosure.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import mpmath

from ..algebra.gaussian import GaussianInt, GaussianRational

DEFAULT_BITS = 256


@lru_cache(maxsize=None)
def context(bits: int = DEFAULT_BITS) -> mpmath.ctx_mp.MPContext:
    ctx = mpmath.MPContext()
    ctx.prec = bits
    return ctx


class BallComplex:
    """Closed disc {z : |z - mid| <= rad}."""

    __slots__ = ("mid", "rad", "ctx")

    def __init__(self, mid, rad=0, bits: int = DEFAULT_BITS, ctx=None):
        self.ctx = ctx or context(bits)
        self.mid = self.ctx.mpc(mid)
        self.rad = self.ctx.mpf(rad)
        if self.rad < 0:
            raise ValueError("radius must be non-negative")

    # construction ---------------------------------------------------------
    @classmethod
    def exact(cls, value, bits: int = DEFAULT_BITS) -> "BallComplex":
        """Ball enclosing an exact rational, Gaussian rational or integer."""
        ctx = context(bits)
        if isinstance(value, (int, GaussianInt)):
            value = GaussianRational.coerce(value)
        if isinstance(value, Fraction):
            value = GaussianRational.from_parts(value)
        if isinstance(value, GaussianRational):
            re = ctx.mpf(value.re) / value.den
            im = ctx.mpf(value.im) / value.den
            mid = ctx.mpc(re, im)
            exact = value.den & (value.den - 1) == 0 and max(abs(value.re), abs(value.im)).bit_length() <= bits
            rad = 0 if exact else abs(mid) * ctx.ldexp(1, 2 - bits)
            return cls(mid, rad, ctx=ctx)
        return cls(value, 0, ctx=ctx)

    def _eps(self, mid) -> object:
        return abs(mid) * self.ctx.ldexp(1, 2 - self.ctx.prec)

    def _up(self, r) -> object:
        return r * (1 + self.ctx.ldexp(1, 4 - self.ctx.prec))

    def _coerce(self, other) -> "BallComplex":
        if isinstance(other, BallComplex):
            return other
        if isinstance(other, (int, Fraction, GaussianInt, GaussianRational)):
            return BallComplex.exact(other, self.ctx.prec)
        return BallComplex(other, 0, ctx=self.ctx)

    # arithmetic -------------------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        mid = self.mid + o.mid
        return BallComplex(mid, self._up(self.rad + o.rad + self._eps(mid)), ctx=self.ctx)

    __radd__ = __add__

    def __neg__(self):
        return BallComplex(-self.mid, self.rad, ctx=self.ctx)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        mid = self.mid * o.mid
        rad = abs(self.mid) * o.rad + abs(o.mid) * self.rad + self.rad * o.rad + self._eps(mid)
        return BallComplex(mid, self._up(rad), ctx=self.ctx)

    __rmul__ = __mul__

    def inverse(self) -> "BallComplex":
        m = abs(self.mid)
        if m <= self.rad:
            raise ZeroDivisionError("ball contains zero")
        mid = 1 / self.mid
        rad = self.rad / (m * (m - self.rad)) + self._eps(mid)
        return BallComplex(mid, self._up(rad), ctx=self.ctx)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = BallComplex(1, 0, ctx=self.ctx)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # queries ----------------------------------------------------------------
    def abs_upper(self):
        return self._up(abs(self.mid) + self.rad)

    def contains(self, value) -> bool:
        """Does the ball contain the exact value (tested with a rigorous margin)?"""
        v = BallComplex.exact(value, self.ctx.prec) if not isinstance(value, BallComplex) else value
        return abs(self.mid - v.mid) <= self._up(self.rad + v.rad + self._eps(self.mid - v.mid))

    def overlaps(self, other: "BallComplex") -> bool:
        return abs(self.mid - other.mid) <= self._up(self.rad + other.rad)

    def __complex__(self):
        return complex(self.mid)

    def __repr__(self):
        return f"BallComplex({mpmath.nstr(self.mid, 15)} +/- {mpmath.nstr(self.rad, 3)})"

    def to_json(self) -> dict:
        ctx = self.ctx
        return {"re": ctx.nstr(self.mid.real, ctx.dps + 2), "im": ctx.nstr(self.mid.imag, ctx.dps + 2),
                "rad": ctx.nstr(self.rad, 5)}


def ball_vector(values, bits: int = DEFAULT_BITS) -> list:
    return [v if isinstance(v, BallComplex) else BallComplex.exact(v, bits) for v in values]


def cube_root_of_unity(bits: int = DEFAULT_BITS) -> BallComplex:
    """w = exp(2 pi i / 3) = (-1 + i sqrt 3) / 2 as a ball."""
    ctx = context(bits)
    mid = ctx.mpc(-0.5, ctx.sqrt(3) / 2)
    return BallComplex(mid, abs(mid) * ctx.ldexp(1, 4 - bits), ctx=ctx)
