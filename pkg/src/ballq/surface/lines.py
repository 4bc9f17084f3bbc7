"""Lines on the surface: canonical forms, orbits, ideal membership, H-lines and incidence."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import lcm

import numpy as np
from scipy import sparse
from scipy.sparse.csgraph import connected_components

from ..algebra.gaussian import GaussianRational
from ..algebra.linalg import rank, rref
from ..algebra.modp import rank_mod_p
from ..algebra.poly import SparsePolynomial
from ..algebra.primefield import DEFAULT_PRIME, PrimeField
from ..errors import DenominatorDivisibleByP, SeedNotOnVariety
from ..grouprep.induced import var_tuples
from ..grouprep.matrices import MatrixRepresentation
from .relations import RelationSpan, sign_involution

_ZERO = GaussianRational(0)


@dataclass(frozen=True)
class ProjectiveLine:
    """Line in projective space, stored as the RREF of its 2 x n span matrix."""

    rows: tuple

    @classmethod
    def through(cls, A, B) -> "ProjectiveLine":
        ech, piv = rref([list(A), list(B)])
        if len(piv) != 2:
            raise ValueError("spanning vectors are dependent")
        return cls(tuple(tuple(r) for r in ech))

    @property
    def A(self) -> tuple:
        return self.rows[0]

    @property
    def B(self) -> tuple:
        return self.rows[1]

    @property
    def dim(self) -> int:
        return len(self.rows[0])

    def point(self, u, v) -> list:
        u, v = GaussianRational.coerce(u), GaussianRational.coerce(v)
        return [u * a + v * b for a, b in zip(*self.rows)]

    def transform(self, M) -> "ProjectiveLine":
        """Image under the point action p -> M^T p."""
        n = self.dim
        imgs = []
        for r in self.rows:
            imgs.append([sum((M[i][j] * r[i] for i in range(n) if M[i][j] and r[i]), _ZERO) for j in range(n)])
        return ProjectiveLine.through(*imgs)

    def __str__(self):
        return "[" + "; ".join(", ".join(str(c) for c in r) for r in self.rows) + "]"


@dataclass
class LineOrbit:
    lines: list
    g_orbit: list  # G-orbit label per line
    full_orbit: list = field(default_factory=list)  # label under G plus the involution

    def __len__(self):
        return len(self.lines)

    def orbit_sizes(self, which: str = "g") -> list:
        labels = self.g_orbit if which == "g" else self.full_orbit
        return [labels.count(k) for k in sorted(set(labels))]

    @property
    def n_g_orbits(self) -> int:
        return len(set(self.g_orbit))


def _bfs(seed: ProjectiveLine, mats: list, limit: int) -> list:
    found = {seed: 0}
    order = [seed]
    head = 0
    while head < len(order):
        L = order[head]
        head += 1
        for M in mats:
            K = L.transform(M)
            if K not in found:
                found[K] = len(order)
                order.append(K)
                if len(order) > limit:
                    raise RuntimeError("line orbit exceeds the limit")
    return order


def build_line_orbit(seed: ProjectiveLine, rep: MatrixRepresentation, span: RelationSpan | None = None,
                     involution=None, limit: int = 10000) -> LineOrbit:
    """Orbit of ``seed`` under G and the involution, with G-orbit labels.

    Raises SeedNotOnVariety if ``span`` is given and the seed is not on it.
    """
    if span is not None:
        bad = verify_lines_in_ideal([seed], span)
        if not bad.ok:
            raise SeedNotOnVariety(f"seed line fails relation {bad.first_failure[1]}")
    J = involution if involution is not None else sign_involution(rep.frame)
    gens = list(rep.generators)
    full = _bfs(seed, gens + [J], limit)
    labels = [-1] * len(full)
    index = {L: k for k, L in enumerate(full)}
    n_orb = 0
    for k, L in enumerate(full):
        if labels[k] >= 0:
            continue
        for K in _bfs(L, gens, limit):
            labels[index[K]] = n_orb
        n_orb += 1
    return LineOrbit(full, labels, [0] * len(full))


# exact evaluation of a relation span along lines --------------------------

def _integral_point(vec) -> tuple:
    d = 1
    for c in vec:
        d = lcm(d, c.den)
    re = np.array([int(c.re * (d // c.den)) for c in vec], dtype=object)
    im = np.array([int(c.im * (d // c.den)) for c in vec], dtype=object)
    return re, im


def _monomial_values(re, im, d: int) -> tuple:
    T = var_tuples(len(re), d)
    vr, vi = re[T[:, 0]], im[T[:, 0]]
    for k in range(1, d):
        ar, ai = re[T[:, k]], im[T[:, k]]
        vr, vi = vr * ar - vi * ai, vr * ai + vi * ar
    return vr, vi


def _relation_arrays(span: RelationSpan) -> tuple:
    if not hasattr(span, "_int_rows"):
        R = []
        for row in span.rows:
            d = 1
            for c in row:
                d = lcm(d, c.den)
            R.append([(int(c.re * (d // c.den)), int(c.im * (d // c.den))) for c in row])
        Rr = np.array([[a for a, _ in r] for r in R], dtype=object).reshape(len(R), -1)
        Ri = np.array([[b for _, b in r] for r in R], dtype=object).reshape(len(R), -1)
        span._int_rows = (Rr, Ri)
    return span._int_rows


def relation_values(span: RelationSpan, point) -> np.ndarray:
    """Exact values (as bool 'nonzero' per relation) at a point, up to a common scale."""
    Rr, Ri = _relation_arrays(span)
    vr, vi = _monomial_values(*_integral_point(point), span.degree)
    return (Rr.dot(vr) - Ri.dot(vi) != 0) | (Rr.dot(vi) + Ri.dot(vr) != 0)


@dataclass
class IdealReport:
    checked: int
    failures: list  # (line index, relation index)

    @property
    def ok(self) -> bool:
        return not self.failures

    @property
    def first_failure(self):
        return self.failures[0] if self.failures else None


def verify_lines_in_ideal(lines, span: RelationSpan) -> IdealReport:
    """Does every relation vanish identically along every line?

    A binary form of degree d vanishing at d+1 distinct points of P^1 is
    zero, so each line is tested at (1:0), (0:1), (1:1), (1:2), ...
    """
    d = span.degree
    params = [(1, 0), (0, 1)] + [(1, k) for k in range(1, d)]
    failures = []
    for li, L in enumerate(lines):
        for u, v in params:
            nz = relation_values(span, L.point(u, v))
            if nz.any():
                failures.append((li, int(np.flatnonzero(nz)[0])))
                break
    return IdealReport(len(lines), failures)


def line_residual(L: ProjectiveLine, f: SparsePolynomial) -> SparsePolynomial:
    """f restricted to the line, as a binary form in (u, v)."""
    from ..algebra.poly import frame, linear_form
    fr = frame(("u", 2))
    u, v = fr.gens()
    imgs = [u.scale(a) + v.scale(b) for a, b in zip(L.A, L.B)]
    return f.substitute(imgs)


def lines_on_H(lines, h: SparsePolynomial) -> list:
    """Indices of lines along which the linear form ``h`` vanishes."""
    out = []
    for k, L in enumerate(lines):
        if not h.evaluate(list(L.A)) and not h.evaluate(list(L.B)):
            out.append(k)
    return out


# incidence -----------------------------------------------------------------

@dataclass
class IncidenceGraph:
    n: int
    edges: list
    n_components: int
    component: list

    @property
    def connected(self) -> bool:
        return self.n_components == 1

    def degree(self) -> list:
        deg = [0] * self.n
        for a, b in self.edges:
            deg[a] += 1
            deg[b] += 1
        return deg


def lines_meet(L: ProjectiveLine, K: ProjectiveLine) -> bool:
    return rank([list(L.A), list(L.B), list(K.A), list(K.B)]) <= 3


def line_incidence_graph(lines, p: int = DEFAULT_PRIME) -> IncidenceGraph:
    """Edges join distinct lines whose 4 x n span matrix has rank <= 3.

    Mod-p rank 4 already proves rank 4 over Q(i); other pairs are decided exactly.
    """
    F = PrimeField(p)
    n = len(lines)
    try:
        red = [np.array([[F.reduce(c) for c in r] for r in L.rows], dtype=np.int64) for L in lines]
    except DenominatorDivisibleByP:
        red = None
    edges = []
    for a in range(n):
        for b in range(a + 1, n):
            if red is not None and rank_mod_p(np.vstack([red[a], red[b]]), p) == 4:
                continue
            if lines_meet(lines[a], lines[b]):
                edges.append((a, b))
    if n == 0:
        return IncidenceGraph(0, [], 0, [])
    ea = np.array(edges, dtype=np.int64).reshape(-1, 2)
    adj = sparse.coo_matrix((np.ones(len(ea)), (ea[:, 0], ea[:, 1])), shape=(n, n))
    ncomp, comp = connected_components(adj, directed=False)
    return IncidenceGraph(n, edges, int(ncomp), [int(c) for c in comp])


def exact_points(L: ProjectiveLine, params) -> list:
    """Points u*A + v*B for parameters (u, v) over Q(i)."""
    return [L.point(u, v) for u, v in params]
