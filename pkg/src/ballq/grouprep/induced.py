"""Induced actions on homogeneous polynomials, isotypic projectors, invariants.

The degree-d action of a matrix M sends the monomial x^m, with variable
tuple (j1, ..., jd), to the product of the image forms l_j1 ... l_jd.  Its
matrix ``Sym^d(M)`` has that product's coefficient vector as column m, in
the descending degrevlex monomial order of :func:`monomials_of_degree`.
With the column convention of :mod:`matrices` this is a homomorphism:
``Sym^d(M N) = Sym^d(M) Sym^d(N)``.

Group sums are computed column by column: column m of sum_g w(g) Sym^d(g)
only needs the d image columns of every g, so the cost is |G| * n**d per
column.  Floating products are used only while every partial sum is
provably below 2**52, which keeps them exact; otherwise the code refuses.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np
from scipy import sparse

from ..algebra import linalg
from ..algebra.gaussian import GaussianRational
from ..algebra.modp import EchelonBasis
from ..algebra.poly import SparsePolynomial, VariableFrame, monomials_of_degree
from ..algebra.primefield import DEFAULT_PRIME, sqrt_minus_one
from ..errors import ResourceLimit
from .closure import FiniteGroupClosure
from .numberfield import QI7

_FLOAT_EXACT = 2.0**52
MATERIALIZE_LIMIT = 500  # largest space whose full projector is built as a matrix


@lru_cache(maxsize=None)
def var_tuples(n: int, d: int) -> np.ndarray:
    """Row k: sorted variable indices of the k-th degree-d monomial."""
    mons = monomials_of_degree(n, d)
    out = np.zeros((len(mons), d), dtype=np.int64)
    for k, m in enumerate(mons):
        out[k] = [j for j, e in enumerate(m) for _ in range(e)]
    return out


@lru_cache(maxsize=None)
def bin_matrix(n: int, d: int) -> sparse.csr_matrix:
    """Sparse (n**d x N_d) 0/1 matrix sending an ordered index tuple to its monomial."""
    index = {m: k for k, m in enumerate(monomials_of_degree(n, d))}
    flat = np.indices((n,) * d).reshape(d, -1).T
    cols = np.empty(len(flat), dtype=np.int64)
    for r, tup in enumerate(flat):
        exp = [0] * n
        for j in tup:
            exp[j] += 1
        cols[r] = index[tuple(exp)]
    return sparse.csr_matrix((np.ones(len(flat)), (np.arange(len(flat)), cols)), shape=(len(flat), len(index)))


def _complex(A: np.ndarray) -> np.ndarray:
    return A[..., 0, :, :] + 1j * A[..., 1, :, :]


def _round_gi(Z: np.ndarray) -> np.ndarray:
    out = np.stack([np.rint(Z.real), np.rint(Z.imag)]).astype(np.int64)
    if not (np.allclose(out[0], Z.real, atol=1e-6) and np.allclose(out[1], Z.imag, atol=1e-6)):
        raise ArithmeticError("group sum left the Gaussian integers")
    return out


def _check_bound(max_entry: float, max_weight: float, count: int, d: int) -> None:
    # each output entry sums at most count * n**d products, each bounded below
    if count * max_weight * max_entry**d * 4 >= _FLOAT_EXACT:
        raise ResourceLimit("group sum would exceed the exact float64 range")


def sym_power_gi(M: np.ndarray, d: int, chunk: int = 256) -> np.ndarray:
    """Exact Sym^d of a Gaussian-integer matrix (2, n, n) -> (2, N_d, N_d)."""
    n = M.shape[-1]
    Z = _complex(M)
    J = var_tuples(n, d)
    N = len(J)
    _check_bound(np.abs(Z).max(initial=1), 1, n**d, d)
    S = bin_matrix(n, d)
    out = np.zeros((N, N), dtype=complex)
    for s in range(0, N, chunk):
        Js = J[s:s + chunk]
        T = Z[:, Js[:, 0]].T  # (c, n)
        for k in range(1, d):
            T = (T[:, :, None] * Z[:, Js[:, k]].T[:, None, :]).reshape(len(Js), -1)
        out[s:s + chunk] = (S.T @ T.T).T
    return _round_gi(out.T)


def power_sum_traces(G: FiniteGroupClosure, element: int, d: int, block=None) -> list:
    """tr(g^k) for k = 1..d, exact, optionally on a coordinate block."""
    out = []
    k_id = element
    for k in range(1, d + 1):
        A = G.elements[k_id]
        if block is not None:
            A = A[:, block][:, :, block]
        out.append(complex(int(np.trace(A[0])), int(np.trace(A[1]))))
        k_id = G.multiply(k_id, element)
    return [GaussianRational(int(z.real), int(z.imag)) for z in out]


def sym_trace(power_sums, d: int) -> GaussianRational:
    """tr Sym^d(g) from tr(g^k), k = 1..d, by Newton's identity h_d = (1/d) sum p_k h_{d-k}."""
    h = [GaussianRational(1)]
    for m in range(1, d + 1):
        s = GaussianRational(0)
        for k in range(1, m + 1):
            s = s + power_sums[k - 1] * h[m - k]
        h.append(s / m)
    return h[d]


def block_indices(frame: VariableFrame, names) -> np.ndarray | None:
    if names is None:
        return None
    return np.array([frame.index(v) for v in names], dtype=np.int64)


def _gi_weight(v) -> complex:
    q = QI7.coerce(v)
    g = q.to_gaussian()
    if g.den != 1:
        raise ValueError("projector weights must be Gaussian integers")
    return complex(g.re, g.im)


@dataclass
class GroupAverage:
    """The operator sum_g w(g) Sym^d(g) / den on degree-d forms of a coordinate block.

    ``weights`` holds one Gaussian integer per group element.  The operator
    is never formed in full unless asked: columns are produced on demand.
    """

    group: FiniteGroupClosure
    d: int
    weights: np.ndarray  # complex, exact Gaussian integers
    den: int
    names: tuple | None = None
    _cols: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        idx = block_indices(self.group.rep.frame, self.names)
        E = _complex(self.group.elements)
        if idx is not None:
            E = E[:, idx][:, :, idx]
        self._E = E
        self.n = E.shape[-1]
        self.monomials = monomials_of_degree(self.n, self.d)
        _check_bound(np.abs(E).max(initial=1), np.abs(self.weights).max(initial=1),
                     len(E) * self.n**self.d, self.d)

    @property
    def frame(self) -> VariableFrame:
        fr = self.group.rep.frame
        return fr if self.names is None else fr.sub(self.names)

    @property
    def dim_space(self) -> int:
        return len(self.monomials)

    def numerator_column(self, m: int) -> np.ndarray:
        """Exact Gaussian-integer column m of the numerator, shape (2, N_d)."""
        if m not in self._cols:
            J = var_tuples(self.n, self.d)[m]
            E = self._E
            T = self.weights[:, None] * E[:, :, J[0]]  # (|G|, n)
            for k in range(1, self.d - 1):
                T = (T[:, :, None] * E[:, :, J[k]][:, None, :]).reshape(len(E), -1)
            # the last factor contracts over the group
            T = T.sum(axis=0) if self.d == 1 else (T.T @ E[:, :, J[-1]]).reshape(-1)
            col = bin_matrix(self.n, self.d).T @ T
            self._cols[m] = _round_gi(col)
        return self._cols[m]

    def numerator(self) -> np.ndarray:
        if self.dim_space > MATERIALIZE_LIMIT:
            raise ResourceLimit(f"degree-{self.d} space of dimension {self.dim_space} is not materialized")
        cols = [self.numerator_column(m) for m in range(self.dim_space)]
        return np.stack(cols, axis=-1)

    def matrix(self) -> list:
        """Exact operator as nested lists of GaussianRational."""
        num = self.numerator()
        return [[GaussianRational.from_parts(Fraction(int(num[0, i, j]), self.den), Fraction(int(num[1, i, j]), self.den))
                 for j in range(num.shape[2])] for i in range(num.shape[1])]

    def is_idempotent(self) -> bool:
        """(num/den)^2 == num/den, checked in exact integer arithmetic."""
        num = self.numerator()
        if float(np.abs(num).max(initial=1)) ** 2 * num.shape[1] * 2 >= 2.0**62:
            num = num.astype(object)
        re, im = num[0], num[1]
        sq_re = re.dot(re) - im.dot(im)
        sq_im = re.dot(im) + im.dot(re)
        return bool(np.all(sq_re == self.den * re) and np.all(sq_im == self.den * im))

    def commutes_with(self, generators_gi) -> bool:
        num = self.numerator()
        P = num[0] + 1j * num[1]
        for g in generators_gi:
            R = _complex(sym_power_gi(g, self.d))
            if not np.array_equal(P @ R, R @ P):
                return False
        return True

    def image_basis(self, target: int, p: int = DEFAULT_PRIME) -> list:
        """``target`` columns independent mod p, then exactly echelonized.

        Independence mod p certifies independence over Q(i); ``target`` must
        come from an exact count such as the trace, so the result spans the
        whole image.
        """
        if target == 0:
            return []
        r = sqrt_minus_one(p)
        basis = EchelonBasis(self.dim_space, p)
        chosen = []
        for m in range(self.dim_space):
            col = self.numerator_column(m)
            red = np.mod(col[0] + r * col[1], p).astype(float)
            if basis.add(red[None, :]):
                chosen.append(col)
                if len(chosen) == target:
                    break
        if len(chosen) < target:
            raise ArithmeticError(f"image has rank {len(chosen)} mod {p}, expected {target}")
        rows = [[GaussianRational(int(c[0, k]), int(c[1, k])) for k in range(self.dim_space)] for c in chosen]
        echelon, _ = linalg.rref(rows)
        return echelon

    def apply(self, vec) -> list:
        """Operator applied to an exact coefficient vector."""
        out = [GaussianRational(0)] * self.dim_space
        for m, c in enumerate(vec):
            if c:
                col = self.numerator_column(m)
                for k in np.nonzero(col[0] | col[1])[0]:
                    out[k] = out[k] + c * GaussianRational(int(col[0, k]), int(col[1, k]))
        return [v / self.den for v in out]


def isotypic_projector(G: FiniteGroupClosure, classes, chi, d: int, names=None) -> GroupAverage:
    """(dim chi / |G|) sum_g conj(chi(g)) Sym^d(g) on degree-d forms of a block.

    ``classes`` must be labelled so that ``chi`` is read in its column order.
    Only characters with Gaussian-integer values are supported.
    """
    chi = [QI7.coerce(v) for v in chi]
    cls_w = [_gi_weight(v.conjugate()) for v in chi]
    w = np.empty(G.order, dtype=complex)
    for c, mem in enumerate(classes.members):
        w[mem] = cls_w[c]
    dim = int(chi[0].a)
    g = np.gcd(dim, G.order)
    return GroupAverage(G, d, w * (dim // g), G.order // g, tuple(names) if names else None)


def reynolds(G: FiniteGroupClosure, d: int, names=None) -> GroupAverage:
    return GroupAverage(G, d, np.ones(G.order, dtype=complex), G.order, tuple(names) if names else None)


def sym_character(G: FiniteGroupClosure, classes, d: int, names=None) -> tuple:
    """Character of Sym^d of a block, from exact traces of powers of class representatives."""
    idx = block_indices(G.rep.frame, names)
    return tuple(QI7.coerce(sym_trace(power_sum_traces(G, r, d, idx), d)) for r in classes.representatives)


def invariant_dimension(G: FiniteGroupClosure, d: int, names=None) -> int:
    """dim of the fixed space = (1/|G|) sum_g tr Sym^d(g), summed element by element."""
    idx = block_indices(G.rep.frame, names)
    s = GaussianRational(0)
    for k in range(G.order):
        s = s + sym_trace(power_sum_traces(G, k, d, idx), d)
    s = s / G.order
    if s.imag or s.den != 1:
        raise ArithmeticError(f"average trace {s} is not an integer")
    return int(s.real)


def isotypic_rank(G: FiniteGroupClosure, classes, chi, d: int, names=None) -> int:
    """trace of the isotypic projector = dim chi * <Sym^d, chi>."""
    sym = sym_character(G, classes, d, names)
    s = QI7(0)
    for n, a, b in zip(classes.sizes, sym, chi):
        s = s + QI7.coerce(a) * QI7.coerce(b).conjugate() * n
    s = s / G.order * QI7.coerce(chi[0])
    if not s.is_rational_integer():
        raise ArithmeticError(f"projector trace {s} is not an integer")
    return int(s.a)


def invariant_subspace(G: FiniteGroupClosure, d: int, names=None, dim: int | None = None) -> list:
    """Exact echelon basis of degree-d invariants of a block, as coefficient rows."""
    R = reynolds(G, d, names)
    if dim is None:
        dim = invariant_dimension(G, d, names)
    return R.image_basis(dim)


def rows_to_polys(rows, fr: VariableFrame, d: int) -> list:
    mons = monomials_of_degree(fr, d)
    return [SparsePolynomial.from_vector(fr, mons, row) for row in rows]
