"""Buchberger's algorithm over F_p in (weighted) degrevlex, with resource limits.

Polynomials are dicts exponent-tuple -> coefficient in [0, p).  Pairs are
selected by the normal strategy (smallest lcm first, degree ties broken by
the order); the product criterion and the chain criterion prune pairs.
"""

from __future__ import annotations

import heapq
import time
from dataclasses import dataclass, field

from ..algebra.poly import SparsePolynomial, VariableFrame, degrevlex_key
from ..algebra.primefield import DEFAULT_PRIME, PrimeField
from ..errors import ResourceLimit


@dataclass
class Budget:
    max_pairs: int = 20000
    max_degree: int = 40
    max_seconds: float | None = None
    max_basis: int = 5000


def _lcm(a: tuple, b: tuple) -> tuple:
    return tuple(max(x, y) for x, y in zip(a, b))


def _divides(a: tuple, b: tuple) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _sub(a: tuple, b: tuple) -> tuple:
    return tuple(x - y for x, y in zip(a, b))


def _add(a: tuple, b: tuple) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


class _Ring:
    def __init__(self, frame: VariableFrame, p: int):
        self.frame = frame
        self.p = p
        self.w = frame.weights

    def key(self, e: tuple):
        return degrevlex_key(e, self.w)

    def lm(self, f: dict) -> tuple:
        return max(f, key=self.key)

    def monic(self, f: dict) -> dict:
        lm = self.lm(f)
        inv = pow(f[lm], -1, self.p)
        return {e: c * inv % self.p for e, c in f.items()}

    def reduce(self, f: dict, basis: list, lms: list, full: bool = True) -> dict:
        """Remainder of f on division by the monic polynomials ``basis``."""
        p = self.p
        f = dict(f)
        heap = [(_neg(self.key(e)), e) for e in f]
        heapq.heapify(heap)
        rem = {}
        while heap:
            _, e = heapq.heappop(heap)
            c = f.pop(e, 0)
            if not c:
                continue
            for g, m in zip(basis, lms):
                if _divides(m, e):
                    q = _sub(e, m)
                    for ge, gc in g.items():
                        if ge == m:
                            continue
                        t = _add(ge, q)
                        old = f.get(t)
                        v = ((old or 0) - c * gc) % p
                        if v:
                            if old is None:
                                heapq.heappush(heap, (_neg(self.key(t)), t))
                            f[t] = v
                        elif old is not None:
                            del f[t]
                    break
            else:
                if not full and not rem:
                    rem[e] = c
                    rem.update(f)
                    return rem
                rem[e] = c
        return rem


def _neg(key):
    deg, rest = key
    return (-deg, tuple(-r for r in rest))


@dataclass
class GroebnerBasis:
    frame: VariableFrame
    p: int
    polys: list  # monic dicts, reduced
    stats: dict = field(default_factory=dict)

    def leading_monomials(self) -> list:
        r = _Ring(self.frame, self.p)
        return [r.lm(f) for f in self.polys]

    def is_unit(self) -> bool:
        zero = (0,) * len(self.frame)
        return any(f.keys() == {zero} for f in self.polys)

    def to_polys(self) -> list:
        return [SparsePolynomial(self.frame, dict(f), self.p) for f in self.polys]

    def reduce(self, f: dict) -> dict:
        r = _Ring(self.frame, self.p)
        return r.reduce(f, self.polys, self.leading_monomials())

    def standard_monomial_count(self, d: int) -> int:
        from ..algebra.poly import monomials_of_degree
        lms = self.leading_monomials()
        return sum(1 for m in monomials_of_degree(self.frame, d) if not any(_divides(l, m) for l in lms))

    def krull_dimension(self) -> int:
        """Largest set of variables containing no leading monomial's support."""
        n = len(self.frame)
        supports = [frozenset(j for j, e in enumerate(m) if e) for m in self.leading_monomials()]
        if any(not s for s in supports):
            return -1  # unit ideal: empty
        best = 0

        def rec(k, chosen):
            nonlocal best
            if len(chosen) + (n - k) <= best:
                return
            if k == n:
                best = max(best, len(chosen))
                return
            cand = chosen | {k}
            if not any(s <= cand for s in supports):
                rec(k + 1, cand)
            rec(k + 1, chosen)

        rec(0, frozenset())
        return best


def _as_dict(f, field_: PrimeField) -> dict:
    if isinstance(f, dict):
        return {e: c % field_.p for e, c in f.items() if c % field_.p}
    g = f if f.ring != "QQi" else f.reduce_mod(field_)
    return {e: c for e, c in g.terms.items() if c}


def groebner_basis(gens, frame: VariableFrame | None = None, p: int = DEFAULT_PRIME,
                   budget: Budget | None = None) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens`` over F_p."""
    budget = budget or Budget()
    F = PrimeField(p)
    frame = frame or gens[0].frame
    R = _Ring(frame, p)
    start = time.monotonic()
    G: list = []
    lms: list = []
    pairs: list = []  # heap of (sugar key, i, j)
    counter = 0
    processed = 0

    def deg(m):
        return frame.degree(m)

    def add(h):
        nonlocal counter
        h = R.monic(h)
        m = R.lm(h)
        G.append(h)
        lms.append(m)
        k = len(G) - 1
        for i in range(k):
            if G[i] is None:
                continue
            L = _lcm(lms[i], m)
            heapq.heappush(pairs, ((deg(L), _neg(R.key(L))), counter, i, k))
            counter += 1

    for g in gens:
        d = _as_dict(g, F)
        if d:
            d = R.reduce(d, [x for x in G if x is not None], [l for x, l in zip(G, lms) if x is not None])
            if d:
                add(d)
    while pairs:
        (dl, _), _, i, j = heapq.heappop(pairs)
        if G[i] is None or G[j] is None:
            continue
        processed += 1
        if processed > budget.max_pairs:
            raise ResourceLimit(f"more than {budget.max_pairs} pairs")
        if dl > budget.max_degree:
            raise ResourceLimit(f"pair degree {dl} exceeds {budget.max_degree}")
        if budget.max_seconds is not None and time.monotonic() - start > budget.max_seconds:
            raise ResourceLimit(f"time budget of {budget.max_seconds}s exceeded")
        a, b = lms[i], lms[j]
        L = _lcm(a, b)
        # product criterion
        if all(x == 0 or y == 0 for x, y in zip(a, b)):
            continue
        # chain criterion: some k with lm_k | L whose pairs with i and j were already treated
        if any(G[k] is not None and k not in (i, j) and _divides(lms[k], L)
               and _lcm(lms[k], a) != L and _lcm(lms[k], b) != L for k in range(len(G))):
            continue
        fi, fj = G[i], G[j]
        qi, qj = _sub(L, a), _sub(L, b)
        s = {}
        for e, c in fi.items():
            s[_add(e, qi)] = c
        for e, c in fj.items():
            t = _add(e, qj)
            v = (s.get(t, 0) - c) % p
            if v:
                s[t] = v
            else:
                s.pop(t, None)
        active = [(g, l) for g, l in zip(G, lms) if g is not None]
        h = R.reduce(s, [g for g, _ in active], [l for _, l in active])
        if h:
            add(h)
            if len(G) > budget.max_basis:
                raise ResourceLimit(f"basis exceeds {budget.max_basis} elements")
            if R.lm(G[-1]) == (0,) * len(frame):
                break
    # minimal then reduced basis
    live = [(g, l) for g, l in zip(G, lms) if g is not None]
    minimal = [(g, l) for k, (g, l) in enumerate(live)
               if not any(_divides(l2, l) and (l2 != l or k2 < k) for k2, (_, l2) in enumerate(live) if k2 != k)]
    polys = []
    for k, (g, l) in enumerate(minimal):
        others = [x for k2, x in enumerate(minimal) if k2 != k]
        tail = {e: c for e, c in g.items() if e != l}
        red = R.reduce(tail, [x for x, _ in others], [y for _, y in others]) if tail else {}
        red[l] = 1
        polys.append(red)
    polys.sort(key=lambda f: R.key(R.lm(f)))
    return GroebnerBasis(frame, p, polys, {"pairs": processed, "seconds": time.monotonic() - start})
