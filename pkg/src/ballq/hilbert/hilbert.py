"""Hilbert functions from modular Macaulay ranks and quadratic Hilbert-polynomial fits."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction

from ..algebra.primefield import DEFAULT_PRIME
from ..errors import NotStabilized, ResourceLimit
from .macaulay import GradedIdeal, macaulay_rank

CAVEAT = "computed over F_p: a lower bound for the characteristic-0 quotient dimension"


@dataclass
class HilbertRecord:
    """degree -> (monomial count, Macaulay rank, quotient dimension)."""

    entries: dict = field(default_factory=dict)
    prime: int = DEFAULT_PRIME
    caveat: str = CAVEAT

    def add(self, d: int, count: int, rank: int) -> None:
        if rank > count:
            raise ValueError("rank exceeds the monomial count")
        self.entries[d] = (count, rank, count - rank)

    def value(self, d: int) -> int:
        return self.entries[d][2]

    def values(self) -> dict:
        return {d: e[2] for d, e in sorted(self.entries.items())}

    def degrees(self) -> list:
        return sorted(self.entries)

    def to_json(self) -> dict:
        return {"prime": self.prime, "caveat": self.caveat,
                "degrees": {str(d): {"monomials": c, "rank": r, "quotient": q}
                            for d, (c, r, q) in sorted(self.entries.items())}}


def hilbert_function(ideal: GradedIdeal, degrees, p: int = DEFAULT_PRIME, time_budget: float | None = None
                     ) -> HilbertRecord:
    """Quotient dimensions per degree from ranks of Macaulay matrices over F_p."""
    gens = ideal.reduce_mod(p).generators
    rec = HilbertRecord(prime=p)
    start = time.monotonic()
    for d in degrees:
        if time_budget is not None and time.monotonic() - start > time_budget:
            raise ResourceLimit(f"time budget of {time_budget}s used up before degree {d}")
        count, rk = macaulay_rank(gens, d, p, ideal.frame)
        rec.add(d, count, rk)
    return rec


@dataclass(frozen=True)
class HilbertFit:
    """h(k) = a k^2 + b k + c; for a surface polarized by D, Riemann-Roch gives
    D^2 = 2a, K.D = -2b, chi(O) = c."""

    a: Fraction
    b: Fraction
    c: Fraction
    from_degree: int

    @property
    def D2(self) -> Fraction:
        return 2 * self.a

    @property
    def KD(self) -> Fraction:
        return -2 * self.b

    @property
    def chi(self) -> Fraction:
        return self.c

    def __call__(self, k: int) -> Fraction:
        return self.a * k * k + self.b * k + self.c

    def __str__(self):
        return f"{self.a}k^2 + {self.b}k + {self.c}".replace("+ -", "- ")


def fit_hilbert_polynomial(record: HilbertRecord | dict, from_degree: int) -> HilbertFit:
    """Quadratic through the first three degrees >= ``from_degree``; all later degrees must agree."""
    vals = record.values() if isinstance(record, HilbertRecord) else dict(record)
    ks = sorted(d for d in vals if d >= from_degree)
    if len(ks) < 3 or ks[2] - ks[0] != 2:
        raise NotStabilized("need three consecutive degrees to fit")
    k0 = ks[0]
    h0, h1, h2 = (Fraction(vals[k0 + j]) for j in range(3))
    a = (h2 - 2 * h1 + h0) / 2
    b = h1 - h0 - a * (2 * k0 + 1)
    c = h0 - a * k0 * k0 - b * k0
    fit = HilbertFit(a, b, c, k0)
    for k in ks[3:]:
        if fit(k) != vals[k]:
            raise NotStabilized(f"degree {k}: value {vals[k]} but the fit gives {fit(k)}")
    return fit


def stabilized_window(values: dict, formula) -> tuple | None:
    """Largest window (d0, d1) ending at the top degree on which values equal ``formula``."""
    ks = sorted(values)
    if not ks or values[ks[-1]] != formula(ks[-1]):
        return None
    d0 = ks[-1]
    for k in reversed(ks):
        if values[k] != formula(k):
            break
        d0 = k
    return d0, ks[-1]
