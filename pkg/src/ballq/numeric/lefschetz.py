"""Holomorphic Lefschetz counts for a C3 action with isolated (1/3, 1/3) fixed points.

Arithmetic is exact in Q(w), w = exp(2 pi i / 3), with basis {1, w} and
w^2 = -1 - w.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class QW:
    a: Fraction
    b: Fraction  # a + b w

    def __init__(self, a=0, b=0):
        object.__setattr__(self, "a", Fraction(a))
        object.__setattr__(self, "b", Fraction(b))

    @classmethod
    def coerce(cls, v) -> "QW":
        return v if isinstance(v, QW) else cls(v, 0)

    def __add__(self, o):
        o = QW.coerce(o)
        return QW(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return QW(-self.a, -self.b)

    def __sub__(self, o):
        return self + (-QW.coerce(o))

    def __rsub__(self, o):
        return QW.coerce(o) - self

    def __mul__(self, o):
        o = QW.coerce(o)
        # (a + b w)(c + d w) = ac + (ad + bc) w + bd w^2, w^2 = -1 - w
        bd = self.b * o.b
        return QW(self.a * o.a - bd, self.a * o.b + self.b * o.a - bd)

    __rmul__ = __mul__

    def conjugate(self) -> "QW":
        # w -> w^2 = -1 - w
        return QW(self.a - self.b, -self.b)

    def norm(self) -> Fraction:
        return self.a * self.a - self.a * self.b + self.b * self.b

    def __truediv__(self, o):
        o = QW.coerce(o)
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(w)")
        t = self * o.conjugate()
        return QW(t.a / n, t.b / n)

    def __rtruediv__(self, o):
        return QW.coerce(o) / self

    def __pow__(self, k: int):
        out = QW(1)
        base = self if k >= 0 else QW(1) / self
        for _ in range(abs(k)):
            out = out * base
        return out

    def is_rational(self) -> bool:
        return self.b == 0

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        return f"{self.a} + {self.b}w"


W = QW(0, 1)


def fixed_point_term(k: int, twist: int) -> QW:
    """Local contribution of one (1/3, 1/3) point to the trace of g^k (k = 1, 2).

    g acts on the tangent space by w^k on both axes, so the structure-sheaf
    term is 1/(1 - w^k)^2; a twist t multiplies it by w^(k t).
    """
    return W ** (k * twist) / (1 - W ** k) ** 2


def lefschetz_dimensions(fixed_points: int = 63, N: int = 21, twist: int = 0) -> tuple:
    """Alternating sums for the C3 characters (1, w, w^2).

    (1/3) (N + conj(chi(g)) F tr_1 + conj(chi(g^2)) F tr_2) with tr_k the
    local term of :func:`fixed_point_term` and F the number of fixed points.
    """
    traces = [QW(N)] + [fixed_points * fixed_point_term(k, twist) for k in (1, 2)]
    out = []
    for j in range(3):
        s = QW(0)
        for k in range(3):
            s = s + (W ** (-j * k)) * traces[k]
        v = s / 3
        if not v.is_rational() or v.a.denominator != 1:
            raise ArithmeticError(f"character component {v} is not an integer")
        out.append(int(v.a))
    return tuple(out)
