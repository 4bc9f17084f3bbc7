"""G-stable spans of polynomial relations and the sign involution on x."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..algebra.gaussian import GaussianRational
from ..algebra.linalg import ExactEchelon
from ..algebra.modp import EchelonBasis
from ..algebra.poly import SparsePolynomial, VariableFrame, monomials_of_degree
from ..algebra.primefield import DEFAULT_PRIME, PrimeField
from ..grouprep.matrices import MatrixRepresentation, exact_matmul


@dataclass
class RelationSpan:
    """Exact RREF basis of a space of degree-d forms on a frame."""

    frame: VariableFrame
    degree: int
    rows: list
    pivots: list
    layers: list = field(default_factory=list)  # dimension after each generator layer

    @property
    def dim(self) -> int:
        return len(self.rows)

    def monomials(self) -> tuple:
        return monomials_of_degree(self.frame, self.degree)

    def polynomials(self) -> list:
        mons = self.monomials()
        return [SparsePolynomial.from_vector(self.frame, mons, row) for row in self.rows]

    def contains(self, poly: SparsePolynomial) -> bool:
        e = ExactEchelon(len(self.monomials()))
        e.rows, e.pivots = self.rows, self.pivots
        return e.contains(poly.coefficient_vector(self.monomials()))

    def modp_rows(self, p: int = DEFAULT_PRIME) -> np.ndarray:
        F = PrimeField(p)
        return np.array([[F.reduce(c) for c in row] for row in self.rows], dtype=float).reshape(-1, len(self.monomials()))

    def __eq__(self, other):
        return (isinstance(other, RelationSpan) and self.frame == other.frame and self.degree == other.degree
                and self.rows == other.rows)


def _homogeneous_degree(seeds) -> int:
    degs = set()
    for s in seeds:
        if not s.is_homogeneous():
            raise ValueError("seed relations must be homogeneous")
        degs |= s.degrees()
    if len(degs) != 1:
        raise ValueError("seeds must share one degree")
    return degs.pop()


def orbit_span(seeds, rep: MatrixRepresentation, p: int = DEFAULT_PRIME) -> RelationSpan:
    """Exact basis of the span of all translates of ``seeds``.

    Generators are applied layer by layer; a translate enters the basis when
    it is independent mod p (which implies independence over Q(i)).  When a
    layer adds nothing, stability of the span is certified exactly: every
    generator image of every basis vector must reduce to zero.
    """
    fr = rep.frame
    d = _homogeneous_degree(seeds)
    mons = monomials_of_degree(fr, d)
    F = PrimeField(p)
    shadow = EchelonBasis(len(mons), p)
    exact = ExactEchelon(len(mons))
    images = [rep.image_polys(k) for k in range(len(rep.generators))]
    basis_polys = []
    layers = []

    def offer(poly) -> bool:
        vec = poly.coefficient_vector(mons)
        red = np.array([[F.reduce(c) for c in vec]], dtype=float)
        if shadow.add(red):
            exact.add(vec)
            basis_polys.append(poly)
            return True
        return False

    frontier = [s for s in seeds if offer(s)]
    layers.append(exact.rank)
    while True:
        while frontier:
            new = []
            for f in frontier:
                for im in images:
                    g = f.substitute(im)
                    if offer(g):
                        new.append(g)
            frontier = new
            layers.append(exact.rank)
        # exact certification of stability
        missing = []
        for f in basis_polys:
            for im in images:
                g = f.substitute(im)
                if not exact.contains(g.coefficient_vector(mons)):
                    missing.append(g)
        if not missing:
            break
        for g in missing:
            if exact.add(g.coefficient_vector(mons)):
                basis_polys.append(g)
                frontier.append(g)
                shadow.add(np.array([[F.reduce(c) for c in g.coefficient_vector(mons)]], dtype=float))
    rows, piv = exact.echelon()
    return RelationSpan(fr, d, rows, piv, layers)


def span_from_polys(polys, fr: VariableFrame, d: int) -> RelationSpan:
    mons = monomials_of_degree(fr, d)
    e = ExactEchelon(len(mons))
    for f in polys:
        e.add(f.coefficient_vector(mons))
    rows, piv = e.echelon()
    return RelationSpan(fr, d, rows, piv)


def span_from_rows(rows, fr: VariableFrame, d: int) -> RelationSpan:
    e = ExactEchelon(len(monomials_of_degree(fr, d)))
    for r in rows:
        e.add(r)
    r2, piv = e.echelon()
    return RelationSpan(fr, d, r2, piv)


def sum_of_spans(*spans) -> RelationSpan:
    s0 = spans[0]
    rows = [r for s in spans for r in s.rows]
    return span_from_rows(rows, s0.frame, s0.degree)


def sign_involution(fr: VariableFrame, prefix: str = "x") -> list:
    """Diagonal matrix: -1 on variables named ``prefix*``, +1 elsewhere."""
    n = len(fr)
    return [[GaussianRational(-1 if (i == j and fr.names[i].startswith(prefix)) else int(i == j))
             for j in range(n)] for i in range(n)]


@dataclass
class InvolutionReport:
    commutes: list
    span_stable: bool | None

    @property
    def ok(self) -> bool:
        return all(self.commutes) and self.span_stable is not False


def verify_involution(rep: MatrixRepresentation, span: RelationSpan | None = None, prefix: str = "x",
                      matrix=None) -> InvolutionReport:
    """Does the sign involution commute with every generator and preserve ``span``?"""
    J = matrix if matrix is not None else sign_involution(rep.frame, prefix)
    commutes = [exact_matmul(J, g) == exact_matmul(g, J) for g in rep.generators]
    stable = None
    if span is not None:
        imgs = MatrixRepresentation(rep.frame, [J]).image_polys(0)
        e = ExactEchelon(len(span.monomials()))
        e.rows, e.pivots = span.rows, span.pivots
        stable = all(e.contains(f.substitute(imgs).coefficient_vector(span.monomials())) for f in span.polynomials())
    return InvolutionReport(commutes, stable)


# projector-based reconstruction ---------------------------------------------

def quadric_matrix(f: SparsePolynomial) -> np.ndarray:
    """Symmetric Gaussian-integer matrix 2Q with f = x^T Q x, after clearing denominators.

    Returns (scale, array of shape (2, n, n)) with 2 * scale * f = x^T (A) x.
    """
    from math import lcm
    n = len(f.frame)
    den = 1
    for c in f.terms.values():
        den = lcm(den, c.den)
    A = np.zeros((2, n, n), dtype=np.int64)
    for exp, c in f.terms.items():
        idx = [k for k, e in enumerate(exp) for _ in range(e)]
        re, im = c.re * (den // c.den), c.im * (den // c.den)
        i, j = idx
        if i == j:
            A[0, i, i] += 2 * re
            A[1, i, i] += 2 * im
        else:
            A[0, i, j] += re
            A[1, i, j] += im
            A[0, j, i] += re
            A[1, j, i] += im
    return den, A


def _quadric_vectors(Q: np.ndarray, mons) -> np.ndarray:
    """Monomial coefficient vectors (times 2) of the forms x^T Q_k x; Q complex (k, n, n)."""
    out = np.empty((Q.shape[0], len(mons)), dtype=complex)
    for m, exp in enumerate(mons):
        i, j = [k for k, e in enumerate(exp) for _ in range(e)]
        out[:, m] = Q[:, i, j] + Q[:, j, i] if i != j else Q[:, i, i]
    return out


def group_module_span(G, f: SparsePolynomial, names=None, p: int = DEFAULT_PRIME) -> RelationSpan:
    """Span of all translates f(g x) over every element of a closed group.

    Unlike :func:`orbit_span` this runs over the whole element list at once;
    the translate of x^T Q x by g is x^T (g Q g^T) x.
    """
    from ..grouprep.induced import block_indices
    fr = f.frame
    idx = block_indices(G.rep.frame, names if names is not None else fr.names)
    E = G.elements[:, 0] + 1j * G.elements[:, 1]
    E = E[:, idx][:, :, idx]
    _, A = quadric_matrix(f)
    Q = A[0] + 1j * A[1]
    T = E @ Q @ np.transpose(E, (0, 2, 1))
    if np.abs(T).max() >= 2.0**50:
        raise ArithmeticError("translates exceed the exact float range")
    mons = monomials_of_degree(fr, 2)
    V = _quadric_vectors(T, mons)
    V = np.round(V.real).astype(np.int64), np.round(V.imag).astype(np.int64)
    r = PrimeField(p).root
    shadow = EchelonBasis(len(mons), p)
    exact = ExactEchelon(len(mons))
    for k in range(len(T)):
        red = np.mod(V[0][k] + r * V[1][k], p).astype(float)[None, :]
        if shadow.add(red):
            exact.add([GaussianRational(int(a), int(b)) for a, b in zip(V[0][k], V[1][k])])
    rows, piv = exact.echelon()
    return RelationSpan(fr, 2, rows, piv)
