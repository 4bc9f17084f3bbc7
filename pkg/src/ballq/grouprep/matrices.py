"""Exact matrix representations and fast Gaussian-integer matrix kernels.

Convention: the matrix M of a group element acts on polynomials by the
substitution ``x_j -> sum_i M[i, j] x_i``, so column ``j`` is the image of
variable ``j``.  The printed action tables list a tuple of linear forms
``(x_1, ..., x_n) -> (f_1, ..., f_n)``; entry ``f_k`` is row ``k`` of M
(``layout="rows"``).  Reading the entries as columns instead gives the dual
action, under which neither the printed invariant form nor the printed
relation spans are preserved.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from ..algebra.gaussian import GaussianRational
from ..algebra.poly import SparsePolynomial, VariableFrame, linear_form

INT_LIMIT = 2**31  # entries above this leave the int64 fast path


def action_matrix(images: Sequence[SparsePolynomial], fr: VariableFrame, layout: str = "columns") -> list:
    """Matrix whose columns (or rows) are the coefficient vectors of ``images``."""
    if layout not in ("columns", "rows"):
        raise ValueError("layout must be 'columns' or 'rows'")
    n = len(fr)
    if len(images) != n:
        raise ValueError("need one image per variable")
    zero = GaussianRational(0)
    M = [[zero] * n for _ in range(n)]
    for j, img in enumerate(images):
        if img.frame != fr:
            raise ValueError("image lives on another frame")
        for exp, c in img.terms.items():
            if sum(exp) != 1:
                raise ValueError(f"image of {fr.names[j]} is not a linear form")
            M[exp.index(1)][j] = c
    if layout == "rows":
        M = [list(r) for r in zip(*M)]
    return M


def matrix_images(M, fr: VariableFrame, layout: str = "columns") -> list:
    """Inverse of :func:`action_matrix`."""
    n = len(fr)
    if layout == "rows":
        return [linear_form(fr, list(M[k])) for k in range(n)]
    return [linear_form(fr, [M[i][j] for i in range(n)]) for j in range(n)]


def is_integral(M) -> bool:
    return all(c.den == 1 for row in M for c in row)


def to_gi(M) -> np.ndarray:
    """Exact Gaussian-integer matrix -> int64 array of shape (2, n, m)."""
    if not is_integral(M):
        raise ValueError("matrix has non-integral entries")
    re = np.array([[c.re for c in row] for row in M], dtype=np.int64)
    im = np.array([[c.im for c in row] for row in M], dtype=np.int64)
    return np.stack([re, im])


def from_gi(A: np.ndarray) -> list:
    return [[GaussianRational(int(a), int(b)) for a, b in zip(ra, rb)] for ra, rb in zip(A[0], A[1])]


def gi_matmul(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    ar, ai = A[0], A[1]
    br, bi = B[0], B[1]
    return np.stack([ar @ br - ai @ bi, ar @ bi + ai @ br])


def gi_matmul_batch(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Products over stacks: either operand may be (N, 2, n, n) or a single (2, n, n)."""
    ar, ai = A[..., 0, :, :], A[..., 1, :, :]
    br, bi = B[..., 0, :, :], B[..., 1, :, :]
    return np.stack([ar @ br - ai @ bi, ar @ bi + ai @ br], axis=-3)


def gi_identity(n: int) -> np.ndarray:
    out = np.zeros((2, n, n), dtype=np.int64)
    out[0] = np.eye(n, dtype=np.int64)
    return out


def gi_trace(A: np.ndarray) -> GaussianRational:
    return GaussianRational(int(np.trace(A[0])), int(np.trace(A[1])))


def gi_transpose(A: np.ndarray) -> np.ndarray:
    return np.ascontiguousarray(A.transpose(0, 2, 1))


def gi_key(A: np.ndarray) -> bytes:
    return np.ascontiguousarray(A).tobytes()


def check_range(A: np.ndarray) -> None:
    if np.abs(A).max(initial=0) >= INT_LIMIT:
        raise OverflowError("Gaussian-integer matrix entries too large for the int64 kernel")


def exact_matmul(A, B) -> list:
    n, k, m = len(A), len(B), len(B[0])
    zero = GaussianRational(0)
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            s = zero
            for t in range(k):
                if A[i][t] and B[t][j]:
                    s = s + A[i][t] * B[t][j]
            row.append(s)
        out.append(row)
    return out


def block_diag(*blocks) -> list:
    n = sum(len(b) for b in blocks)
    zero = GaussianRational(0)
    out = [[zero] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, c in enumerate(row):
                out[off + i][off + j] = c
        off += len(b)
    return out


@dataclass
class MatrixRepresentation:
    """Generators of a matrix group acting linearly on a variable frame."""

    frame: VariableFrame
    generators: list
    name: str = ""
    _gi: list | None = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        n = len(self.frame)
        for g in self.generators:
            if len(g) != n or any(len(row) != n for row in g):
                raise ValueError("generator size does not match the frame")
        for g in self.generators:
            if _rank_exact(g) < n:
                raise ValueError("generator matrix is singular")

    @classmethod
    def from_images(cls, fr: VariableFrame, tables: Sequence[Sequence[SparsePolynomial]], name="",
                    layout: str = "columns"):
        return cls(fr, [action_matrix(t, fr, layout) for t in tables], name)

    @property
    def dim(self) -> int:
        return len(self.frame)

    @property
    def integral(self) -> bool:
        return all(is_integral(g) for g in self.generators)

    def gi_generators(self) -> list:
        if self._gi is None:
            self._gi = [to_gi(g) for g in self.generators]
        return self._gi

    def direct_sum(self, other: "MatrixRepresentation", name="") -> "MatrixRepresentation":
        if len(self.generators) != len(other.generators):
            raise ValueError("direct sum needs matching generator lists")
        return MatrixRepresentation(self.frame.concat(other.frame),
                                    [block_diag(a, b) for a, b in zip(self.generators, other.generators)],
                                    name)

    def restrict(self, names: Sequence[str], name="") -> "MatrixRepresentation":
        """Sub-representation on an invariant coordinate block."""
        idx = [self.frame.index(v) for v in names]
        rest = [k for k in range(self.dim) if k not in idx]
        for g in self.generators:
            if any(g[r][c] for r in rest for c in idx):
                raise ValueError("coordinate block is not invariant")
        return MatrixRepresentation(self.frame.sub(names),
                                    [[[g[r][c] for c in idx] for r in idx] for g in self.generators],
                                    name)

    def image_polys(self, k: int) -> list:
        """Substitution images of the variables under generator k."""
        return matrix_images(self.generators[k], self.frame)


def _rank_exact(M) -> int:
    from ..algebra.linalg import rank
    return rank(M)
