"""Exact linear algebra over Q(i) on lists of :class:`GaussianRational` rows."""

from __future__ import annotations

from typing import Sequence

from .gaussian import GaussianRational

_ZERO = GaussianRational(0)
_ONE = GaussianRational(1)


def _as_rows(M) -> list:
    return [[GaussianRational.coerce(c) for c in row] for row in M]


def rref(M, *, copy=True) -> tuple:
    """Reduced row echelon form; returns ``(rows, pivot_columns)``.

    Zero rows are dropped.  Pivots are normalized to 1, so the result is
    canonical for the row space.
    """
    rows = _as_rows(M) if copy else M
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((k for k in range(r, len(rows)) if rows[k][c]), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = rows[r][c].inverse()
        if inv != _ONE:
            rows[r] = [v * inv if v else v for v in rows[r]]
        prow = rows[r]
        nz = [j for j in range(c, ncols) if prow[j]]
        for k in range(len(rows)):
            if k != r and rows[k][c]:
                f = rows[k][c]
                row = rows[k]
                for j in nz:
                    row[j] = row[j] - f * prow[j]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rank(M) -> int:
    return len(rref(M)[1])


def row_space_equal(A, B) -> bool:
    ra, _ = rref(A)
    rb, _ = rref(B)
    return ra == rb


def nullspace(M) -> list:
    """Basis of ``{v : M v = 0}`` as a list of vectors."""
    if not M:
        return []
    ncols = len(M[0])
    rows, pivots = rref(M)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [_ZERO] * ncols
        v[f] = _ONE
        for row, p in zip(rows, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def matvec(M, v) -> list:
    out = []
    for row in M:
        s = _ZERO
        for a, b in zip(row, v):
            if a and b:
                s = s + a * b
        out.append(s)
    return out


def in_row_space(echelon: tuple, v: Sequence) -> bool:
    """Is ``v`` in the span of an RREF ``(rows, pivots)``?"""
    rows, pivots = echelon
    w = list(v)
    for row, p in zip(rows, pivots):
        f = w[p]
        if f:
            w = [a - f * b if b else a for a, b in zip(w, row)]
    return not any(w)


def transpose(M) -> list:
    return [list(col) for col in zip(*M)]


def to_integral_rows(rows) -> list:
    """Scale each row by a common denominator so all entries lie in Z[i]."""
    from math import lcm
    out = []
    for row in rows:
        d = 1
        for c in row:
            d = lcm(d, c.den)
        out.append([c * d for c in row])
    return out


class ExactEchelon:
    """Incrementally maintained reduced row echelon basis over Q(i)."""

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.rows: list = []
        self.pivots: list = []

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, v) -> list:
        w = [GaussianRational.coerce(c) for c in v]
        for row, p in zip(self.rows, self.pivots):
            f = w[p]
            if f:
                w = [a - f * b if b else a for a, b in zip(w, row)]
        return w

    def contains(self, v) -> bool:
        return not any(self.reduce(v))

    def add(self, v) -> bool:
        """Insert ``v``; returns False if it was already in the span."""
        w = self.reduce(v)
        p = next((k for k, c in enumerate(w) if c), None)
        if p is None:
            return False
        inv = w[p].inverse()
        w = [c * inv if c else c for c in w]
        for k, row in enumerate(self.rows):
            f = row[p]
            if f:
                self.rows[k] = [a - f * b if b else a for a, b in zip(row, w)]
        pos = next((k for k, q in enumerate(self.pivots) if q > p), len(self.pivots))
        self.rows.insert(pos, w)
        self.pivots.insert(pos, p)
        return True

    def echelon(self) -> tuple:
        return [list(r) for r in self.rows], list(self.pivots)


def primitive(row) -> list:
    """Scalar multiple of ``row`` with Gaussian-integer entries and unit content."""
    from functools import reduce
    from .gaussian import GaussianInt, gaussian_gcd
    scaled = to_integral_rows([row])[0]
    g = reduce(gaussian_gcd, (GaussianInt(c.re, c.im) for c in scaled if c), GaussianInt(0))
    if not g:
        return scaled
    inv = GaussianRational(g.re, g.im).inverse()
    return [c * inv for c in scaled]
