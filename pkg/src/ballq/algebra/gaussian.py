"""Exact arithmetic in the Gaussian integers Z[i] and the field Q(i)."""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from numbers import Rational


class GaussianInt:
    """An element ``re + im*i`` of Z[i]."""

    __slots__ = ("re", "im")

    def __init__(self, re: int = 0, im: int = 0):
        self.re = int(re)
        self.im = int(im)

    @classmethod
    def coerce(cls, value) -> "GaussianInt":
        if isinstance(value, GaussianInt):
            return value
        if isinstance(value, int):
            return cls(value, 0)
        if isinstance(value, GaussianRational) and value.den == 1:
            return cls(value.re, value.im)
        raise TypeError(f"cannot coerce {value!r} to GaussianInt")

    def norm(self) -> int:
        return self.re * self.re + self.im * self.im

    def conjugate(self) -> "GaussianInt":
        return GaussianInt(self.re, -self.im)

    def __bool__(self):
        return bool(self.re or self.im)

    def __eq__(self, other):
        try:
            other = GaussianInt.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __neg__(self):
        return GaussianInt(-self.re, -self.im)

    def __add__(self, other):
        try:
            other = GaussianInt.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianInt(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            other = GaussianInt.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianInt(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            other = GaussianInt.coerce(other)
        except TypeError:
            return NotImplemented
        a, b, c, d = self.re, self.im, other.re, other.im
        return GaussianInt(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a Gaussian integer")
        result, base = GaussianInt(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other):
        """Euclidean division with remainder of norm at most half the divisor's."""
        other = GaussianInt.coerce(other)
        n = other.norm()
        if n == 0:
            raise ZeroDivisionError("Gaussian division by zero")
        p = self * other.conjugate()
        q = GaussianInt(_round_div(p.re, n), _round_div(p.im, n))
        return q, self - q * other

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __truediv__(self, other):
        return GaussianRational(self) / other

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) / GaussianRational(self)

    def __repr__(self):
        return f"GaussianInt({self.re}, {self.im})"

    def __str__(self):
        return _format(self.re, self.im)


def _round_div(a: int, n: int) -> int:
    """Nearest integer to a/n for n > 0 (ties toward +inf)."""
    return (2 * a + n) // (2 * n)


def gaussian_gcd(a: GaussianInt, b: GaussianInt) -> GaussianInt:
    a, b = GaussianInt.coerce(a), GaussianInt.coerce(b)
    while b:
        a, b = b, a % b
    return a


def _format(re: int, im: int) -> str:
    if im == 0:
        return str(re)
    imag = "i" if abs(im) == 1 else f"{abs(im)}i"
    if re == 0:
        return ("-" if im < 0 else "") + imag
    return f"({re}{'-' if im < 0 else '+'}{imag})"


class GaussianRational:
    """An element ``(re + im*i)/den`` of Q(i) in canonical form.

    The denominator is a positive rational integer and
    ``gcd(re, im, den) == 1``, so equal values have equal fields.
    """

    __slots__ = ("re", "im", "den")

    def __init__(self, re=0, im=0, den=1):
        if isinstance(re, GaussianInt):
            if im:
                raise TypeError("pass a GaussianInt alone or integer parts")
            re, im = re.re, re.im
        elif isinstance(re, GaussianRational):
            re, im, den = re.re, re.im, re.den
        re, im, den = int(re), int(im), int(den)
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            re, im, den = -re, -im, -den
        g = gcd(gcd(re, im), den)
        if g > 1:
            re, im, den = re // g, im // g, den // g
        self.re, self.im, self.den = re, im, den

    @classmethod
    def _raw(cls, re: int, im: int, den: int) -> "GaussianRational":
        obj = object.__new__(cls)
        obj.re, obj.im, obj.den = re, im, den
        return obj

    @classmethod
    def from_parts(cls, real, imag=0) -> "GaussianRational":
        """Build from rational real and imaginary parts."""
        real, imag = Fraction(real), Fraction(imag)
        den = real.denominator * imag.denominator // gcd(real.denominator, imag.denominator)
        return cls(real.numerator * (den // real.denominator),
                   imag.numerator * (den // imag.denominator), den)

    @classmethod
    def from_pair(cls, num, den) -> "GaussianRational":
        """``num/den`` with both given as Gaussian integers or (re, im) pairs."""
        n = num if isinstance(num, GaussianInt) else GaussianInt(*num)
        d = den if isinstance(den, GaussianInt) else GaussianInt(*den)
        return cls(n) / cls(d)

    @classmethod
    def coerce(cls, value) -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, int):
            return cls._raw(value, 0, 1)
        if isinstance(value, GaussianInt):
            return cls._raw(value.re, value.im, 1)
        if isinstance(value, Rational):
            return cls(value.numerator, 0, value.denominator)
        if isinstance(value, complex) and value.real.is_integer() and value.imag.is_integer():
            return cls(int(value.real), int(value.imag))
        raise TypeError(f"cannot coerce {value!r} to GaussianRational")

    @property
    def num(self) -> GaussianInt:
        return GaussianInt(self.re, self.im)

    @property
    def real(self) -> Fraction:
        return Fraction(self.re, self.den)

    @property
    def imag(self) -> Fraction:
        return Fraction(self.im, self.den)

    def is_integral(self) -> bool:
        return self.den == 1

    def conjugate(self):
        return GaussianRational._raw(self.re, -self.im, self.den)

    def norm(self) -> Fraction:
        return Fraction(self.re * self.re + self.im * self.im, self.den * self.den)

    def __complex__(self):
        return complex(self.re / self.den, self.im / self.den)

    def __bool__(self):
        return bool(self.re or self.im)

    def __eq__(self, other):
        if not isinstance(other, GaussianRational):
            try:
                other = GaussianRational.coerce(other)
            except TypeError:
                return NotImplemented
        return self.re == other.re and self.im == other.im and self.den == other.den

    def __hash__(self):
        if self.im == 0:
            return hash(Fraction(self.re, self.den))
        return hash((self.re, self.im, self.den))

    def __neg__(self):
        return GaussianRational._raw(-self.re, -self.im, self.den)

    def __add__(self, other):
        if not isinstance(other, GaussianRational):
            try:
                other = GaussianRational.coerce(other)
            except TypeError:
                return NotImplemented
        if self.den == other.den:
            return GaussianRational(self.re + other.re, self.im + other.im, self.den)
        return GaussianRational(self.re * other.den + other.re * self.den,
                                self.im * other.den + other.im * self.den,
                                self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, GaussianRational):
            try:
                other = GaussianRational.coerce(other)
            except TypeError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, GaussianRational):
            try:
                other = GaussianRational.coerce(other)
            except TypeError:
                return NotImplemented
        a, b, c, d = self.re, self.im, other.re, other.im
        return GaussianRational(a * c - b * d, a * d + b * c, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "GaussianRational":
        n = self.re * self.re + self.im * self.im
        if n == 0:
            raise ZeroDivisionError("inverse of zero in Q(i)")
        # 1/((a+bi)/d) = d(a-bi)/(a^2+b^2)
        return GaussianRational(self.den * self.re, -self.den * self.im, n)

    def __truediv__(self, other):
        if not isinstance(other, GaussianRational):
            try:
                other = GaussianRational.coerce(other)
            except TypeError:
                return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result, base = GaussianRational._raw(1, 0, 1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im}, {self.den})"

    def __str__(self):
        s = _format(self.re, self.im)
        return s if self.den == 1 else f"{s}/{self.den}"


ZERO = GaussianRational._raw(0, 0, 1)
ONE = GaussianRational._raw(1, 0, 1)
I = GaussianRational._raw(0, 1, 1)


def gq(re=0, im=0, den=1) -> GaussianRational:
    """Shorthand constructor used throughout the package and tests."""
    return GaussianRational(re, im, den)
