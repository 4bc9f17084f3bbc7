"""Graded ideals and their Macaulay matrices."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..algebra.gaussian import GaussianRational
from ..algebra.modp import rank_mod_p
from ..algebra.poly import QQI, SparsePolynomial, VariableFrame, monomials_of_degree
from ..algebra.primefield import DEFAULT_PRIME, PrimeField
from ..errors import FrameMismatch, NonHomogeneousGenerator


@dataclass
class GradedIdeal:
    """Homogeneous generators on a (possibly weighted) frame."""

    frame: VariableFrame
    generators: list
    name: str = ""

    def __post_init__(self):
        for k, g in enumerate(self.generators):
            if g.frame != self.frame:
                raise FrameMismatch(f"generator {k} lives on another frame")
            if not g.is_homogeneous():
                raise NonHomogeneousGenerator(f"generator {k} has degrees {sorted(g.degrees())}")

    def degrees(self) -> list:
        return [g.degree() for g in self.generators]

    def reduce_mod(self, p: int = DEFAULT_PRIME) -> "GradedIdeal":
        if all(g.ring != QQI for g in self.generators):
            return self
        F = PrimeField(p)
        return GradedIdeal(self.frame, [g.reduce_mod(F) for g in self.generators], self.name)

    def with_generators(self, extra) -> "GradedIdeal":
        return GradedIdeal(self.frame, list(self.generators) + list(extra), self.name)


def _encoder(fr: VariableFrame, k: int):
    """Injective integer code for monomials of degree <= k, monotone per position."""
    base = k + 1
    powers = base ** np.arange(len(fr) - 1, -1, -1, dtype=object)
    if base ** len(fr) < 2**62:
        powers = powers.astype(np.int64)
    return lambda E: E.astype(powers.dtype) @ powers


@dataclass
class MacaulayMatrix:
    """Sparse triplets of the degree-k Macaulay matrix.

    Rows are ordered generator by generator, each over cofactor monomials in
    descending degrevlex; columns are the degree-k monomials in descending
    degrevlex.
    """

    degree: int
    columns: tuple
    row_labels: list  # (generator index, cofactor monomial)
    rows: np.ndarray = field(repr=False)  # row index per entry
    cols: np.ndarray = field(repr=False)
    values: list = field(repr=False)  # coefficients in the generators' ring

    @property
    def shape(self) -> tuple:
        return len(self.row_labels), len(self.columns)

    def dense_mod_p(self, p: int = DEFAULT_PRIME) -> np.ndarray:
        F = PrimeField(p)
        M = np.zeros(self.shape)
        vals = np.array([F.reduce(v) for v in self.values], dtype=float)
        np.add.at(M, (self.rows, self.cols), vals)
        return np.mod(M, p)

    def exact(self) -> list:
        M = [[GaussianRational(0)] * self.shape[1] for _ in range(self.shape[0])]
        for r, c, v in zip(self.rows, self.cols, self.values):
            M[r][c] = M[r][c] + v
        return M

    def row_blocks_mod_p(self, p: int = DEFAULT_PRIME, chunk: int = 512):
        """Dense F_p row blocks, for streamed rank computations."""
        F = PrimeField(p)
        vals = np.array([F.reduce(v) for v in self.values], dtype=float)
        bounds = np.searchsorted(self.rows, np.arange(0, self.shape[0] + chunk, chunk))
        for s in range(0, self.shape[0], chunk):
            lo, hi = bounds[s // chunk], bounds[s // chunk + 1]
            B = np.zeros((min(chunk, self.shape[0] - s), self.shape[1]))
            np.add.at(B, (self.rows[lo:hi] - s, self.cols[lo:hi]), vals[lo:hi])
            yield np.mod(B, p)


def macaulay_matrix(gens, k: int, fr: VariableFrame | None = None) -> MacaulayMatrix:
    """Rows g * m for every generator g and monomial m with deg(g m) = k."""
    if not gens and fr is None:
        raise ValueError("need generators or a frame")
    fr = fr or gens[0].frame
    for j, g in enumerate(gens):
        if g.frame != fr:
            raise FrameMismatch(f"generator {j} lives on another frame")
        if not g.is_homogeneous():
            raise NonHomogeneousGenerator(f"generator {j} is not homogeneous")
    cols = monomials_of_degree(fr, k)
    enc = _encoder(fr, k)
    col_codes = enc(np.array(cols, dtype=np.int64).reshape(len(cols), len(fr)))
    order = np.argsort(col_codes)
    sorted_codes = col_codes[order]
    labels, R, C, V = [], [], [], []
    for j, g in enumerate(gens):
        if not g:
            continue
        dg = g.degree()
        if dg > k:
            continue
        cof = monomials_of_degree(fr, k - dg)
        if not cof:
            continue
        Cof = np.array(cof, dtype=np.int64).reshape(len(cof), len(fr))
        base = len(labels)
        labels.extend((j, m) for m in cof)
        for exp, c in g.terms.items():
            codes = enc(Cof + np.array(exp, dtype=np.int64))
            R.append(base + np.arange(len(cof)))
            C.append(order[np.searchsorted(sorted_codes, codes)])
            V.extend([c] * len(cof))
    if R:
        R, C = np.concatenate(R), np.concatenate(C)
        srt = np.argsort(R, kind="stable")
        R, C = R[srt], C[srt]
        V = [V[s] for s in srt]
    else:
        R = C = np.zeros(0, dtype=np.int64)
    return MacaulayMatrix(k, cols, labels, R, C, V)


def macaulay_rank(gens, k: int, p: int = DEFAULT_PRIME, fr: VariableFrame | None = None) -> tuple:
    """(number of degree-k monomials, rank mod p of the degree-k Macaulay matrix)."""
    M = macaulay_matrix(gens, k, fr)
    if M.shape[0] == 0:
        return M.shape[1], 0
    return M.shape[1], rank_mod_p(M.row_blocks_mod_p(p), p, ncols=M.shape[1])
