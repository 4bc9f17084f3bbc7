"""Reduction of Q(i) into a prime field F_p with p = 1 (mod 4)."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from ..errors import DenominatorDivisibleByP
from .gaussian import GaussianInt, GaussianRational

DEFAULT_PRIME = 101


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@lru_cache(maxsize=None)
def sqrt_minus_one(p: int) -> int:
    """Smallest r in [1, p) with r^2 = -1 mod p, found by search."""
    if not is_prime(p) or p % 4 != 1:
        raise ValueError(f"{p} is not a prime congruent to 1 mod 4")
    for r in range(2, p):
        if r * r % p == p - 1:
            return r
    raise AssertionError("unreachable for p = 1 mod 4")


@dataclass(frozen=True)
class PrimeField:
    """F_p together with the image ``r`` of i under Z[i] -> Z[i]/(r - i)."""

    p: int = DEFAULT_PRIME
    root: int = 0

    def __post_init__(self):
        if not self.root:
            object.__setattr__(self, "root", sqrt_minus_one(self.p))
        elif (self.root * self.root + 1) % self.p:
            raise ValueError(f"{self.root}^2 != -1 mod {self.p}")

    def reduce(self, value) -> int:
        """Image of an element of Q(i) (or Z, Fraction, GaussianInt) in F_p."""
        if isinstance(value, int):
            return value % self.p
        if isinstance(value, GaussianInt):
            return (value.re + value.im * self.root) % self.p
        q = GaussianRational.coerce(value)
        if q.den % self.p == 0:
            raise DenominatorDivisibleByP(f"denominator of {q} vanishes mod {self.p}")
        num = (q.re + q.im * self.root) % self.p
        return num * pow(q.den, -1, self.p) % self.p

    def inv(self, a: int) -> int:
        return pow(a, -1, self.p)


@dataclass(frozen=True)
class PrimeFieldElement:
    value: int
    p: int = DEFAULT_PRIME

    def __post_init__(self):
        object.__setattr__(self, "value", self.value % self.p)

    def _check(self, other):
        if isinstance(other, int):
            return PrimeFieldElement(other, self.p)
        if other.p != self.p:
            raise ValueError("mixing different prime fields")
        return other

    def __add__(self, other):
        other = self._check(other)
        return PrimeFieldElement(self.value + other.value, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        return PrimeFieldElement(self.value - other.value, self.p)

    def __mul__(self, other):
        other = self._check(other)
        return PrimeFieldElement(self.value * other.value, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._check(other)
        return PrimeFieldElement(self.value * pow(other.value, -1, self.p), self.p)

    def __neg__(self):
        return PrimeFieldElement(-self.value, self.p)

    def __int__(self):
        return self.value
