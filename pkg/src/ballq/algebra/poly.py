"""Sparse multivariate polynomials over Q(i) or F_p with weighted gradings.

Monomials are exponent tuples.  Every polynomial carries a
:class:`VariableFrame`; arithmetic between polynomials on different frames
raises :class:`FrameMismatch`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Callable, Iterable, Mapping, Sequence

from ..errors import FrameMismatch
from .gaussian import GaussianRational
from .primefield import PrimeField

QQI = "QQi"
MAX_EXPONENT = 255  # exponents are stored as uint8 in dense Macaulay code

Monomial = tuple


@dataclass(frozen=True)
class VariableFrame:
    names: tuple
    weights: tuple = ()

    def __post_init__(self):
        names = tuple(self.names)
        weights = tuple(self.weights) if self.weights else (1,) * len(names)
        if len(set(names)) != len(names):
            raise ValueError("variable names must be unique")
        if len(weights) != len(names) or any(w <= 0 for w in weights):
            raise ValueError("grading must give a positive weight per variable")
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "weights", weights)

    def __len__(self):
        return len(self.names)

    def index(self, name: str) -> int:
        return self.names.index(name)

    @property
    def standard(self) -> bool:
        return all(w == 1 for w in self.weights)

    def var(self, name_or_index, ring=QQI) -> "SparsePolynomial":
        k = name_or_index if isinstance(name_or_index, int) else self.index(name_or_index)
        exp = [0] * len(self)
        exp[k] = 1
        return SparsePolynomial(self, {tuple(exp): _one(ring)}, ring)

    def gens(self, ring=QQI) -> list:
        return [self.var(k, ring) for k in range(len(self))]

    def degree(self, exp: Monomial) -> int:
        return sum(w * e for w, e in zip(self.weights, exp))

    def sub(self, names: Sequence[str]) -> "VariableFrame":
        idx = [self.index(n) for n in names]
        return VariableFrame(tuple(names), tuple(self.weights[k] for k in idx))

    def concat(self, other: "VariableFrame") -> "VariableFrame":
        return VariableFrame(self.names + other.names, self.weights + other.weights)


def frame(*groups: tuple, weights=()) -> VariableFrame:
    """``frame(("x", 6), ("y", 7))`` -> x1..x6, y1..y7."""
    names = []
    for prefix, count, *start in groups:
        first = start[0] if start else 1
        names.extend(f"{prefix}{k}" for k in range(first, first + count))
    return VariableFrame(tuple(names), tuple(weights))


def degrevlex_key(exp: Monomial, weights: Sequence[int] | None = None):
    """Sort key: larger key means larger monomial in (weighted) degrevlex."""
    deg = sum(exp) if weights is None else sum(w * e for w, e in zip(weights, exp))
    return (deg, tuple(-e for e in reversed(exp)))


def degrevlex_cmp(a: Monomial, b: Monomial, weights=None) -> int:
    ka, kb = degrevlex_key(a, weights), degrevlex_key(b, weights)
    return (ka > kb) - (ka < kb)


@lru_cache(maxsize=None)
def _standard_monomials(n: int, d: int) -> tuple:
    out = []
    for combo in combinations_with_replacement(range(n), d):
        exp = [0] * n
        for k in combo:
            exp[k] += 1
        out.append(tuple(exp))
    out.sort(key=degrevlex_key, reverse=True)
    return tuple(out)


@lru_cache(maxsize=None)
def _weighted_monomials(weights: tuple, d: int) -> tuple:
    n = len(weights)
    out = []

    def rec(k, remaining, acc):
        if k == n - 1:
            if remaining % weights[k] == 0:
                out.append(tuple(acc + [remaining // weights[k]]))
            return
        for e in range(remaining // weights[k] + 1):
            rec(k + 1, remaining - e * weights[k], acc + [e])

    if n == 0:
        return ((),) if d == 0 else ()
    rec(0, d, [])
    out.sort(key=lambda e: degrevlex_key(e, weights), reverse=True)
    return tuple(out)


def monomials_of_degree(fr: VariableFrame | int, d: int) -> tuple:
    """All monomials of (weighted) degree d, in descending degrevlex order."""
    if isinstance(fr, int):
        return _standard_monomials(fr, d)
    if d < 0:
        return ()
    if fr.standard:
        return _standard_monomials(len(fr), d)
    return _weighted_monomials(fr.weights, d)


def monomial_index(fr, d: int) -> dict:
    return {m: k for k, m in enumerate(monomials_of_degree(fr, d))}


def _one(ring):
    return GaussianRational._raw(1, 0, 1) if ring == QQI else 1


def _zero(ring):
    return GaussianRational._raw(0, 0, 1) if ring == QQI else 0


def _mul_exp(a: Monomial, b: Monomial) -> Monomial:
    out = tuple(x + y for x, y in zip(a, b))
    if out and max(out) > MAX_EXPONENT:
        raise OverflowError("monomial exponent exceeds storage width")
    return out


class SparsePolynomial:
    """Map from exponent tuples to nonzero coefficients.

    ``ring`` is ``"QQi"`` (coefficients :class:`GaussianRational`) or a prime
    ``p`` (coefficients ints in ``[0, p)``).
    """

    __slots__ = ("frame", "terms", "ring")

    def __init__(self, fr: VariableFrame, terms: Mapping | None = None, ring=QQI):
        self.frame = fr
        self.ring = ring
        clean = {}
        n = len(fr)
        for exp, c in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != n:
                raise FrameMismatch(f"exponent {exp} does not fit a frame of {n} variables")
            if min(exp, default=0) < 0:
                raise ValueError("negative exponent")
            if max(exp, default=0) > MAX_EXPONENT:
                raise OverflowError("monomial exponent exceeds storage width")
            c = GaussianRational.coerce(c) if ring == QQI else int(c) % ring
            if exp in clean:
                c = clean[exp] + c
                if ring != QQI:
                    c %= ring
            if c:
                clean[exp] = c
            else:
                clean.pop(exp, None)
        self.terms = clean

    # construction helpers -------------------------------------------------
    @classmethod
    def constant(cls, fr, c, ring=QQI):
        return cls(fr, {(0,) * len(fr): c}, ring)

    def _new(self, terms):
        p = SparsePolynomial.__new__(SparsePolynomial)
        p.frame, p.ring, p.terms = self.frame, self.ring, terms
        return p

    def _coerce(self, other) -> "SparsePolynomial":
        if isinstance(other, SparsePolynomial):
            if other.frame != self.frame:
                raise FrameMismatch("polynomials live on different variable frames")
            if other.ring != self.ring:
                raise TypeError("polynomials over different coefficient rings")
            return other
        return SparsePolynomial.constant(self.frame, other, self.ring)

    # queries ------------------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if not isinstance(other, SparsePolynomial):
            try:
                other = self._coerce(other)
            except (TypeError, FrameMismatch):
                return NotImplemented
        return self.frame == other.frame and self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.frame, self.ring, frozenset(self.terms.items())))

    def degrees(self) -> set:
        return {self.frame.degree(e) for e in self.terms}

    def degree(self) -> int:
        return max(self.degrees(), default=-1)

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def sorted_terms(self):
        w = self.frame.weights
        return sorted(self.terms.items(), key=lambda t: degrevlex_key(t[0], w), reverse=True)

    def leading_monomial(self):
        return self.sorted_terms()[0][0] if self.terms else None

    def coefficient(self, exp) -> object:
        return self.terms.get(tuple(exp), _zero(self.ring))

    # arithmetic ---------------------------------------------------------
    def __neg__(self):
        if self.ring == QQI:
            return self._new({e: -c for e, c in self.terms.items()})
        return self._new({e: (-c) % self.ring for e, c in self.terms.items()})

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            if e in out:
                s = out[e] + c
                if self.ring != QQI:
                    s %= self.ring
                if s:
                    out[e] = s
                else:
                    del out[e]
            else:
                out[e] = c
        return self._new(out)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        if self.ring == QQI:
            c = GaussianRational.coerce(c)
            if not c:
                return self._new({})
            return self._new({e: v * c for e, v in self.terms.items()})
        c = int(c) % self.ring
        if not c:
            return self._new({})
        return self._new({e: v * c % self.ring for e, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, SparsePolynomial):
            try:
                return self.scale(other)
            except TypeError:
                return NotImplemented
        other = self._coerce(other)
        out: dict = {}
        p = self.ring
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = _mul_exp(e1, e2)
                v = c1 * c2
                if e in out:
                    v = out[e] + v
                if p != QQI:
                    v %= p
                out[e] = v
        return self._new({e: c for e, c in out.items() if c})

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, n: int):
        result = SparsePolynomial.constant(self.frame, 1, self.ring)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # evaluation and substitution --------------------------------------
    def evaluate(self, point: Sequence, coefficient_map: Callable | None = None):
        """Value at ``point``; coefficients go through ``coefficient_map`` if given."""
        if len(point) != len(self.frame):
            raise FrameMismatch(f"point of length {len(point)} on a frame of {len(self.frame)}")
        total = None
        powers: dict = {}
        for exp, c in self.terms.items():
            term = coefficient_map(c) if coefficient_map else c
            for k, e in enumerate(exp):
                if e:
                    key = (k, e)
                    if key not in powers:
                        powers[key] = point[k] ** e
                    term = term * powers[key]
            total = term if total is None else total + term
        if total is None:
            return coefficient_map(_zero(self.ring)) if coefficient_map else _zero(self.ring)
        if self.ring != QQI and isinstance(total, int):
            total %= self.ring
        return total

    def substitute(self, images: Sequence["SparsePolynomial"]) -> "SparsePolynomial":
        """Replace variable k by ``images[k]`` (all on a common target frame)."""
        if len(images) != len(self.frame):
            raise FrameMismatch("need one image per variable")
        target = images[0].frame
        result = SparsePolynomial(target, {}, self.ring)
        cache: dict = {}
        for exp, c in self.terms.items():
            term = SparsePolynomial.constant(target, c, self.ring)
            for k, e in enumerate(exp):
                if e:
                    if (k, e) not in cache:
                        cache[(k, e)] = images[k] ** e
                    term = term * cache[(k, e)]
            result = result + term
        return result

    def derivative(self, k: int) -> "SparsePolynomial":
        out = {}
        for exp, c in self.terms.items():
            if exp[k]:
                e = list(exp)
                e[k] -= 1
                out[tuple(e)] = c * exp[k] if self.ring == QQI else c * exp[k] % self.ring
        return SparsePolynomial(self.frame, out, self.ring)

    def reduce_mod(self, p: int | PrimeField) -> "SparsePolynomial":
        """Image over F_p with i mapped to the chosen square root of -1."""
        field = p if isinstance(p, PrimeField) else PrimeField(p)
        if self.ring != QQI:
            raise TypeError("reduce_mod expects a polynomial over Q(i)")
        return SparsePolynomial(self.frame, {e: field.reduce(c) for e, c in self.terms.items()},
                                field.p)

    def coefficient_vector(self, basis: Sequence[Monomial] | Mapping) -> list:
        index = basis if isinstance(basis, Mapping) else {m: k for k, m in enumerate(basis)}
        vec = [_zero(self.ring)] * len(index)
        for e, c in self.terms.items():
            vec[index[e]] = c
        return vec

    @classmethod
    def from_vector(cls, fr, basis: Sequence[Monomial], vec, ring=QQI):
        return cls(fr, {m: c for m, c in zip(basis, vec) if c}, ring)

    def __repr__(self):
        return f"SparsePolynomial({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for exp, c in self.sorted_terms():
            mon = "*".join(n if e == 1 else f"{n}^{e}" for n, e in zip(self.frame.names, exp) if e)
            cs = str(c)
            if not mon:
                parts.append(cs)
            elif cs == "1":
                parts.append(mon)
            elif cs == "-1":
                parts.append("-" + mon)
            else:
                parts.append(f"{cs}*{mon}")
        return " + ".join(parts).replace("+ -", "- ")


def linear_form(fr: VariableFrame, coeffs: Iterable, ring=QQI) -> SparsePolynomial:
    terms = {}
    n = len(fr)
    for k, c in enumerate(coeffs):
        exp = [0] * n
        exp[k] = 1
        terms[tuple(exp)] = c
    return SparsePolynomial(fr, terms, ring)
