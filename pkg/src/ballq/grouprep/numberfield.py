"""The field Q(i, sqrt 7) with exact basis {1, i, s, i*s}, s = sqrt 7."""

from __future__ import annotations

from fractions import Fraction

from ..algebra.gaussian import GaussianInt, GaussianRational


def _q7_mul(p1, p2, q1, q2):
    """(p1 + p2 s)(q1 + q2 s) with s^2 = 7."""
    return p1 * q1 + 7 * p2 * q2, p1 * q2 + p2 * q1


class QI7:
    __slots__ = ("a", "b", "c", "d")  # a + b i + c s + d i s

    def __init__(self, a=0, b=0, c=0, d=0):
        self.a, self.b, self.c, self.d = Fraction(a), Fraction(b), Fraction(c), Fraction(d)

    @classmethod
    def coerce(cls, v) -> "QI7":
        if isinstance(v, QI7):
            return v
        if isinstance(v, (int, Fraction)):
            return cls(v)
        if isinstance(v, (GaussianRational, GaussianInt)):
            q = GaussianRational.coerce(v)
            return cls(q.real, q.imag)
        raise TypeError(f"cannot coerce {v!r} to QI7")

    def _parts(self):
        return (self.a, self.c), (self.b, self.d)  # real part, imaginary part in Q(s)

    def __eq__(self, other):
        try:
            o = QI7.coerce(other)
        except TypeError:
            return NotImplemented
        return (self.a, self.b, self.c, self.d) == (o.a, o.b, o.c, o.d)

    def __hash__(self):
        return hash((self.a, self.b, self.c, self.d))

    def __bool__(self):
        return bool(self.a or self.b or self.c or self.d)

    def __add__(self, other):
        try:
            o = QI7.coerce(other)
        except TypeError:
            return NotImplemented
        return QI7(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)

    __radd__ = __add__

    def __neg__(self):
        return QI7(-self.a, -self.b, -self.c, -self.d)

    def __sub__(self, other):
        return self + (-QI7.coerce(other))

    def __rsub__(self, other):
        return QI7.coerce(other) - self

    def __mul__(self, other):
        try:
            o = QI7.coerce(other)
        except TypeError:
            return NotImplemented
        (xr0, xr1), (xi0, xi1) = self._parts()
        (yr0, yr1), (yi0, yi1) = o._parts()
        rr = _q7_mul(xr0, xr1, yr0, yr1)
        ii = _q7_mul(xi0, xi1, yi0, yi1)
        ri = _q7_mul(xr0, xr1, yi0, yi1)
        ir = _q7_mul(xi0, xi1, yr0, yr1)
        re = (rr[0] - ii[0], rr[1] - ii[1])
        im = (ri[0] + ir[0], ri[1] + ir[1])
        return QI7(re[0], im[0], re[1], im[1])

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = QI7(1)
        for _ in range(n):
            out = out * self
        return out

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return QI7(self.a / other, self.b / other, self.c / other, self.d / other)
        o = QI7.coerce(other)
        # multiply by the three other conjugates to reach a rational norm
        conj_i = o.conjugate()
        conj_s = QI7(o.a, o.b, -o.c, -o.d)
        conj_is = conj_s.conjugate()
        num = conj_i * conj_s * conj_is
        n = (o * num).a
        return self * num / n

    def conjugate(self) -> "QI7":
        """Complex conjugation: i -> -i, sqrt 7 fixed."""
        return QI7(self.a, -self.b, self.c, -self.d)

    def is_rational_integer(self) -> bool:
        return not (self.b or self.c or self.d) and self.a.denominator == 1

    def to_gaussian(self) -> GaussianRational:
        if self.c or self.d:
            raise ValueError(f"{self} is not in Q(i)")
        return GaussianRational.from_parts(self.a, self.b)

    def __complex__(self):
        s = 7 ** 0.5
        return complex(float(self.a) + float(self.c) * s, float(self.b) + float(self.d) * s)

    def __repr__(self):
        return f"QI7({self.a}, {self.b}, {self.c}, {self.d})"

    def __str__(self):
        parts = []
        for coef, unit in ((self.a, ""), (self.b, "i"), (self.c, "s7"), (self.d, "i*s7")):
            if coef:
                parts.append(f"{coef}{'*' + unit if unit else ''}")
        return " + ".join(parts) if parts else "0"
