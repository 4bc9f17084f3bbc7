"""Approximate kernels of monomial evaluation matrices with a certified spectral gap."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from ..errors import GapTooSmall
from .ball import DEFAULT_BITS, context

GAP_RATIO = 1e8
CONDITIONING = 1e12  # allowance between point residuals and coordinate errors


@dataclass
class RelationCandidate:
    monomials: tuple
    coefficients: list  # mpc, unit norm
    residual: object  # max |candidate| over the sample, points chart-normalized


@dataclass
class KernelResult:
    dim: int
    rank: int
    gap: float
    singular_values: list = field(repr=False)
    error_bound: float = 0.0
    candidates: list = field(default_factory=list, repr=False)
    bits: int = DEFAULT_BITS


def _monomial_row(ctx, x, monomials) -> list:
    big = max(abs(v) for v in x)
    x = [v / big for v in x]
    row = []
    for e in monomials:
        t = ctx.mpc(1)
        for j, k in enumerate(e):
            if k:
                t *= x[j] ** k
        row.append(t)
    return row


def evaluation_matrix(monomials, points, bits: int = DEFAULT_BITS):
    ctx = context(bits)
    M = ctx.matrix(len(points), len(monomials))
    for i, p in enumerate(points):
        coords = p.coords if hasattr(p, "coords") else p
        for j, v in enumerate(_monomial_row(ctx, [ctx.mpc(c) for c in coords], monomials)):
            M[i, j] = v
    return M


def numeric_kernel(monomials, points, bits: int = DEFAULT_BITS, gap_ratio: float = GAP_RATIO,
                   want_basis: bool = False, residual_bound=None) -> KernelResult:
    """Kernel of the evaluation matrix, trusted only across a clean spectral gap.

    A singular value counts as zero when it lies below the evaluation error
    bound: rounding at ``bits`` plus ``CONDITIONING`` times the largest point
    residual.  The last nonzero and first zero singular values must differ by
    ``gap_ratio``; otherwise GapTooSmall is raised.
    """
    ctx = context(bits)
    monomials = tuple(monomials)
    M = evaluation_matrix(monomials, points, bits)
    rows, cols = M.rows, M.cols
    if want_basis:
        _, S, V = ctx.svd_c(M, full_matrices=True)
    else:
        S = ctx.svd_c(M, compute_uv=False)
    sv = [S[k] for k in range(min(rows, cols))] + [ctx.mpf(0)] * max(0, cols - rows)
    if residual_bound is None:
        residual_bound = max((getattr(p, "residual", 0) for p in points), default=0)
    bound = ctx.mpf(2) ** (16 - bits) * sv[0] * math.sqrt(rows * cols) + \
        CONDITIONING * ctx.mpf(residual_bound) * math.sqrt(rows)
    r = next((k for k, s in enumerate(sv) if s <= bound), cols)
    if r == cols:
        gap = float("inf")
    elif r == 0:
        raise GapTooSmall("every singular value is below the error bound")
    else:
        gap = float(sv[r - 1] / sv[r]) if sv[r] else float("inf")
        if gap < gap_ratio:
            raise GapTooSmall(f"ratio {gap:.3g} at rank {r} is below {gap_ratio:.0e}")
    out = KernelResult(cols - r, r, gap, sv, float(bound), [], bits)
    if want_basis and r < cols:
        for k in range(r, cols):
            coeffs = [ctx.conj(V[k, j]) for j in range(cols)]
            vals = [abs(sum((M[i, j] * coeffs[j] for j in range(cols)), ctx.mpc(0))) for i in range(rows)]
            out.candidates.append(RelationCandidate(monomials, coeffs, max(vals)))
    return out


MAX_BITS = 4096


def kernel_with_escalation(monomials, sampler, bits: int = DEFAULT_BITS, max_bits: int = MAX_BITS,
                           **kw) -> KernelResult:
    """numeric_kernel on ``sampler(bits)``, doubling the precision on GapTooSmall up to ``max_bits``."""
    while True:
        try:
            return numeric_kernel(monomials, sampler(bits), bits, **kw)
        except GapTooSmall:
            if 2 * bits > max_bits:
                raise
            bits *= 2
