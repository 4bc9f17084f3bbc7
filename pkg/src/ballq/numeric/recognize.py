"""Recognition of Gaussian rationals inside balls by lattice reduction."""

from __future__ import annotations

from sympy import ZZ
from sympy.polys.matrices import DomainMatrix

from ..algebra.gaussian import GaussianRational
from ..errors import InsufficientPrecision, NoCandidate
from .ball import BallComplex


def _reduced_basis(xr: int, xi: int, scale: int) -> list:
    """LLL basis of the lattice of (q_re, q_im, scale * (q x - p)) over Z^4.

    ``xr + i xi`` is x multiplied by ``scale`` and rounded.
    """
    rows = [
        [1, 0, xr, xi],  # q = 1
        [0, 1, -xi, xr],  # q = i
        [0, 0, -scale, 0],  # p = 1
        [0, 0, 0, -scale],  # p = i
    ]
    M = DomainMatrix([[ZZ(v) for v in r] for r in rows], (4, 4), ZZ)
    return [[int(v) for v in r] for r in M.lll().to_list()]


def recognize_gaussian_rational(x: BallComplex, height_bound: int) -> GaussianRational:
    """The unique p/q in the ball with N(p), N(q) <= ``height_bound``.

    Two distinct such fractions are at least 1/height_bound apart, so the
    answer is unique once the radius is below 1/(2 height_bound); larger
    radii raise InsufficientPrecision.
    """
    ctx = x.ctx
    H = int(height_bound)
    if x.rad * 2 * H >= 1:
        raise InsufficientPrecision(f"radius {ctx.nstr(x.rad, 3)} too large for height {H}")
    # scale so that a true relation has last coordinates of size <= 1
    eps = max(x.rad, ctx.ldexp(1, 8 - ctx.prec))
    scale = int(ctx.nint(1 / (eps * 4 * H)))
    scale = max(scale, 4 * H * H)
    xr = int(ctx.nint(x.mid.real * scale))
    xi = int(ctx.nint(x.mid.imag * scale))
    for row in _reduced_basis(xr, xi, scale):
        qr, qi = row[0], row[1]
        if qr == 0 and qi == 0:
            continue
        q = GaussianRational(qr, qi)
        px = x * BallComplex.exact(q, ctx.prec)
        pr, pi = int(ctx.nint(px.mid.real)), int(ctx.nint(px.mid.imag))
        p = GaussianRational(pr, pi)
        cand = p / q
        if _norms_ok(cand, H):
            if x.contains(cand):
                return cand
    raise NoCandidate("no Gaussian rational of the requested height lies in the ball")


def _norms_ok(c: GaussianRational, H: int) -> bool:
    """Some representation p/q of c with N(p), N(q) <= H (q may be non-real)."""
    from ..algebra.gaussian import GaussianInt, gaussian_gcd
    p = GaussianInt(c.re, c.im)
    q = GaussianInt(c.den, 0)
    g = gaussian_gcd(p, q) if p else q
    if p:
        p, q = p // g, q // g
    else:
        q = GaussianInt(1)
    return p.norm() <= H and q.norm() <= H
