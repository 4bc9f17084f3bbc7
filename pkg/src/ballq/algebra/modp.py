"""Dense linear algebra over F_p.

Elimination proceeds in row chunks: each chunk is reduced against the
current reduced echelon basis with one matrix product, the remainder is
echelonized on its own, and the basis is updated with a second product.
Products run in float64, which is exact as long as every partial dot
product stays below 2**53; the inner dimension is split to guarantee that.
"""

from __future__ import annotations

from typing import Iterable, Iterator

import numpy as np

_EXACT = 2**53


def _check_prime(p: int) -> None:
    if p < 2 or (p - 1) ** 2 >= _EXACT:
        raise ValueError(f"modulus {p} outside the float64-exact range")


def matmul_mod(A: np.ndarray, B: np.ndarray, p: int) -> np.ndarray:
    """``A @ B mod p`` for float arrays with entries in [0, p)."""
    k = A.shape[1]
    step = max(1, (_EXACT - 1) // max(1, (p - 1) ** 2))
    if k <= step:
        return np.mod(A @ B, p)
    out = np.zeros((A.shape[0], B.shape[1]))
    for s in range(0, k, step):
        out += np.mod(A[:, s:s + step] @ B[s:s + step], p)
        np.mod(out, p, out=out)
    return out


def _echelonize_small(C: np.ndarray, p: int, skip: np.ndarray) -> tuple:
    """Gauss-Jordan on a small dense block; columns flagged in ``skip`` are known zero."""
    C = C.copy()
    rows, cols = C.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        if skip[c]:
            continue
        nz = np.nonzero(C[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            C[[r, k]] = C[[k, r]]
        inv = pow(int(C[r, c]), -1, p)
        C[r] = np.mod(C[r] * inv, p)
        col = C[:, c].copy()
        col[r] = 0
        hit = np.nonzero(col)[0]
        if hit.size:
            C[hit] = np.mod(C[hit] - np.outer(col[hit], C[r]), p)
        pivots.append(c)
        r += 1
    return C[:r], pivots


class EchelonBasis:
    """Incrementally maintained reduced row echelon basis over F_p."""

    def __init__(self, ncols: int, p: int):
        _check_prime(p)
        self.p = p
        self.ncols = ncols
        self.rows = np.zeros((0, ncols))
        self.pivots: list = []
        self._is_pivot = np.zeros(ncols, dtype=bool)

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, C: np.ndarray) -> np.ndarray:
        C = np.mod(np.asarray(C, dtype=float), self.p)
        if self.pivots:
            C = np.mod(C - matmul_mod(C[:, self.pivots], self.rows, self.p), self.p)
        return C

    def add(self, C: np.ndarray) -> int:
        """Add rows; returns how many were independent of the current basis."""
        if C.shape[0] == 0:
            return 0
        C = self.reduce(C)
        F, new = _echelonize_small(C, self.p, self._is_pivot)
        if not new:
            return 0
        if self.pivots:
            self.rows = np.mod(self.rows - matmul_mod(self.rows[:, new], F, self.p), self.p)
        self.rows = np.vstack([self.rows, F])
        self.pivots.extend(new)
        self._is_pivot[new] = True
        order = np.argsort(self.pivots, kind="stable")
        self.rows = self.rows[order]
        self.pivots = [self.pivots[k] for k in order]
        return len(new)

    def contains(self, v: np.ndarray) -> bool:
        return not self.reduce(np.atleast_2d(v)).any()


def _chunks(M, chunk: int) -> Iterator[np.ndarray]:
    if isinstance(M, np.ndarray):
        for s in range(0, M.shape[0], chunk):
            yield M[s:s + chunk]
    else:
        yield from M


def rank_mod_p(M, p: int, ncols: int | None = None, chunk: int = 256) -> int:
    """Exact rank over F_p of a dense array or an iterable of row blocks."""
    if isinstance(M, np.ndarray):
        if M.ndim != 2 or M.size == 0:
            return 0
        ncols = M.shape[1]
    elif ncols is None:
        raise ValueError("ncols is required for streamed input")
    basis = EchelonBasis(ncols, p)
    for block in _chunks(M, chunk):
        basis.add(np.asarray(block))
        if basis.rank == ncols:
            break
    return basis.rank


def rref_mod_p(M: np.ndarray, p: int) -> tuple:
    basis = EchelonBasis(M.shape[1], p)
    for block in _chunks(M, 256):
        basis.add(block)
    return basis.rows.astype(np.int64), list(basis.pivots)


def nullspace_mod_p(M: np.ndarray, p: int) -> np.ndarray:
    """Rows spanning the right kernel of M over F_p."""
    n = M.shape[1]
    R, piv = rref_mod_p(M, p) if M.shape[0] else (np.zeros((0, n), dtype=np.int64), [])
    free = [c for c in range(n) if c not in set(piv)]
    K = np.zeros((len(free), n), dtype=np.int64)
    for k, f in enumerate(free):
        K[k, f] = 1
        for row, c in zip(R, piv):
            K[k, c] = (-row[f]) % p
    return K


def stack_blocks(blocks: Iterable[np.ndarray]) -> np.ndarray:
    return np.vstack(list(blocks))


def exact_rows_mod_p(rows, p: int, ncols: int | None = None) -> np.ndarray:
    """Reduce exact Q(i) rows mod p, after scaling each to a primitive Gaussian-integer row.

    The scaling only changes rows by units of Q(i), so the span is the same
    in characteristic 0, and no row reduces to zero.
    """
    from .linalg import primitive
    from .primefield import PrimeField
    F = PrimeField(p)
    rows = list(rows)
    n = len(rows[0]) if rows else (ncols or 0)
    out = np.zeros((len(rows), n))
    for k, r in enumerate(rows):
        out[k] = [F.reduce(c) for c in primitive(r)]
    return out
