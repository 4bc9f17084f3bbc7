"""Jacobian-minor smoothness test over F_p.

Adds a chosen set of r x r minors of the Jacobian to the ideal and asks the
Groebner engine whether the result is empty.  Only a subset of minors is
used, so a negative answer proves nothing: the report is then INCONCLUSIVE.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb

import numpy as np

from ..algebra.primefield import DEFAULT_PRIME, PrimeField
from ..errors import ResourceLimit
from .groebner import Budget, groebner_basis
from .macaulay import GradedIdeal

SUCCESS = "SUCCESS"
INCONCLUSIVE = "INCONCLUSIVE"


@dataclass
class SmoothnessReport:
    status: str
    rows: tuple
    n_minors: int
    projective: bool
    basis_size: int = 0
    krull_dimension: int | None = None
    stats: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.status == SUCCESS


def _point_mod_p(point, p: int) -> list:
    F = PrimeField(p)
    return [v % p if isinstance(v, int) else int(F.reduce(v)) for v in point]


def select_rows(jac, r: int, points, p: int) -> tuple:
    """Greedy choice of r rows whose gradients are independent at the points (rank growth mod p)."""
    from ..algebra.modp import EchelonBasis
    n = len(jac[0])
    for pt in points:
        vals = _point_mod_p(pt, p)
        chosen = []
        E = EchelonBasis(n, p)
        for i, row in enumerate(jac):
            g = np.array([int(d.evaluate(vals)) % p if d else 0 for d in row], dtype=float)
            if E.add(g[None]):
                chosen.append(i)
            if len(chosen) == r:
                return tuple(chosen)
    if points:
        raise ValueError(f"no {r} generators with independent gradients at the given points")
    return tuple(range(r))


def _det(M, rows, p, memo, cols):
    """Laplace expansion along the first remaining row; memoized on the column set."""
    if not rows:
        return 1
    key = (len(rows), cols)
    if key in memo:
        return memo[key]
    i, rest = rows[0], rows[1:]
    total = None
    for k, j in enumerate(cols):
        if not M[i][j]:
            continue
        sub = _det(M, rest, p, memo, cols[:k] + cols[k + 1:])
        if isinstance(sub, int) and sub == 0:
            continue
        term = M[i][j] * sub
        if k % 2:
            term = -term
        total = term if total is None else total + term
    memo[key] = 0 if total is None else total
    return memo[key]


def jacobian_minor_check(ideal: GradedIdeal, minor_size: int, points=(), p: int = DEFAULT_PRIME,
                         budget: Budget | None = None, projective: bool = False, max_minors: int | None = None,
                         max_terms: int = 200_000) -> SmoothnessReport:
    """Test whether ideal + selected minors is the unit ideal (or irrelevant, if ``projective``)."""
    fr = ideal.frame
    n = len(fr)
    gens = [g.reduce_mod(p) for g in ideal.generators]
    jac = [[g.derivative(j) for j in range(n)] for g in gens]
    r = minor_size
    rows = select_rows(jac, r, list(points), p) if len(gens) > r else tuple(range(len(gens)))
    if len(rows) < r:
        raise ValueError(f"need at least {r} generators")
    deg = sum(max(gens[i].degree() - 1, 0) for i in rows)
    est = comb(n + deg - 1, deg) if deg else 1
    if est > max_terms:
        raise ResourceLimit(f"a {r}x{r} minor may have {est} terms (cap {max_terms})")
    col_sets = list(combinations(range(n), r))
    if max_minors is not None:
        col_sets = col_sets[:max_minors]
    memo: dict = {}
    minors = [m for m in (_det(jac, list(rows), p, memo, cols) for cols in col_sets)
              if not isinstance(m, int) and m]
    G = groebner_basis(gens + minors, fr, p, budget)
    kd = G.krull_dimension()
    done = G.is_unit() or (projective and kd == 0)
    return SmoothnessReport(SUCCESS if done else INCONCLUSIVE, rows, len(minors), projective,
                            len(G.polys), kd, G.stats)
