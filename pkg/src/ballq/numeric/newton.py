"""Gauss-Newton on sliced polynomial systems, with ball-certified residuals.

Iterates start in float64 (least-squares steps from a QR-based solver) and
are then refined at full precision: the residual is evaluated in mpmath
and the step is solved with the float64 Jacobian at the current iterate.
That refinement converges linearly with a ratio near machine epsilon, so a
handful of steps reach any target tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..algebra.gaussian import GaussianRational
from ..errors import Diverged, SingularJacobian
from .ball import DEFAULT_BITS, BallComplex, context
from .polysys import PolynomialSystem


@dataclass
class Slice:
    """Homogeneous linear forms sum_j A[i, j] x_j - b[i] x_c, c the chart coordinate.

    ``A`` holds small Gaussian integers; ``b`` holds multiprecision constants.
    """

    A: np.ndarray  # complex, integer-valued
    b: list
    chart: int

    @classmethod
    def through(cls, point, chart: int, rng: np.random.Generator, count: int = 2, bits: int = DEFAULT_BITS,
                spread: int = 5) -> "Slice":
        """Random slice whose forms vanish at ``point`` (mpc or exact coordinates)."""
        ctx = context(bits)
        n = len(point)
        A = rng.integers(-spread, spread + 1, (count, n)) + 1j * rng.integers(-spread, spread + 1, (count, n))
        x = _mp_point(point, bits)
        xc = x[chart]
        b = [sum((ctx.mpc(A[i, j]) * x[j] for j in range(n)), ctx.mpc(0)) / xc for i in range(count)]
        return cls(A, b, chart)

    def shifted(self, delta) -> "Slice":
        return Slice(self.A, [bi + d for bi, d in zip(self.b, delta)], self.chart)

    def eval_mp(self, x, bits: int) -> list:
        ctx = context(bits)
        return [sum((ctx.mpc(a) * xj for a, xj in zip(row, x) if a), ctx.mpc(0)) - bi * x[self.chart]
                for row, bi in zip(self.A, self.b)]

    def eval_float(self, x: np.ndarray) -> np.ndarray:
        return self.A @ x - np.array([complex(bi) for bi in self.b]) * x[self.chart]

    def jacobian_float(self) -> np.ndarray:
        J = self.A.astype(complex).copy()
        J[:, self.chart] -= np.array([complex(bi) for bi in self.b])
        return J


def _mp_point(point, bits: int) -> list:
    ctx = context(bits)
    out = []
    for c in point:
        if isinstance(c, (GaussianRational, int)):
            q = GaussianRational.coerce(c)
            out.append(ctx.mpc(ctx.mpf(q.re) / q.den, ctx.mpf(q.im) / q.den))
        elif isinstance(c, BallComplex):
            out.append(ctx.mpc(c.mid))
        else:
            out.append(ctx.mpc(c))
    return out


@dataclass
class VarietyPoint:
    coords: list  # mpc, normalized so that coords[chart] == 1
    residual: object  # certified bound on max_k |f_k| / max|coef f_k|
    provenance: str
    bits: int
    chart: int
    iterations: int = 0
    meta: dict = field(default_factory=dict)

    def as_complex(self) -> np.ndarray:
        return np.array([complex(c) for c in self.coords])

    def balls(self) -> list:
        ctx = context(self.bits)
        return [BallComplex(c, 0, ctx=ctx) for c in self.coords]

    def distance(self, other: "VarietyPoint"):
        """max |x_j - y_j| after putting both points in this point's chart."""
        c = self.chart
        y = [v / other.coords[c] for v in other.coords]
        return max(abs(a - b) for a, b in zip(self.coords, y))

    def to_json(self) -> dict:
        ctx = context(self.bits)
        return {"coords": [[ctx.nstr(c.real, ctx.dps), ctx.nstr(c.imag, ctx.dps)] for c in self.coords],
                "residual": ctx.nstr(self.residual, 5), "provenance": self.provenance, "bits": self.bits}


def certify_residual(system: PolynomialSystem, coords, bits: int):
    """Ball bound on max_k |f_k(x)| / scale_k at the exact binary point ``coords``."""
    ctx = context(bits)
    vals = system.eval_ball([BallComplex(c, 0, ctx=ctx) for c in coords])
    return max(v.abs_upper() / s for v, s in zip(vals, system.scale_factors()))


def _stack_float(system, slc, x):
    F = np.concatenate([system.eval_float(x), slc.eval_float(x)])
    J = np.vstack([system.jacobian_float(x), slc.jacobian_float()])
    return F, J


def _lstsq_step(J: np.ndarray, F: np.ndarray, free: np.ndarray) -> np.ndarray:
    Jf = J[:, free]
    Q, R = np.linalg.qr(Jf)
    d = np.abs(np.diag(R))
    if d.min(initial=np.inf) <= 1e-12 * d.max(initial=1.0):
        raise SingularJacobian("rank drop in the sliced Jacobian")
    step = np.zeros(J.shape[1], dtype=complex)
    step[free] = np.linalg.solve(R, Q.conj().T @ F)
    return step


def gauss_newton(system: PolynomialSystem, slc: Slice, start, bits: int = DEFAULT_BITS, tol: float = 1e-60,
                 max_float_iter: int = 60, max_mp_iter: int = 40, float_only: bool = False) -> VarietyPoint:
    """Least-squares Newton for ``system`` plus ``slc`` from ``start`` in the slice's chart."""
    c = slc.chart
    x0 = np.array([complex(v) for v in _mp_point(start, 53)])
    x = x0 / x0[c]
    free = np.array([j != c for j in range(len(x))])
    it = 0
    for it in range(1, max_float_iter + 1):
        F, J = _stack_float(system, slc, x)
        step = _lstsq_step(J, F, free)
        x = x - step
        if not np.all(np.isfinite(x)) or np.abs(x).max() > 1e8:
            raise Diverged("iterate left every bounded region")
        if np.abs(step).max() < 1e-13 * max(1.0, np.abs(x).max()):
            break
    else:
        raise Diverged(f"no float convergence in {max_float_iter} iterations")
    ctx = context(bits)
    xm = [ctx.mpc(v) for v in x]
    xm[c] = ctx.mpc(1)
    if float_only:
        return VarietyPoint(xm, None, "newton", bits, c, it)
    scales = system.scale_factors()
    target = ctx.mpf(tol) / 16
    for k in range(1, max_mp_iter + 1):
        r = [v / s for v, s in zip(system.eval_mp(xm, bits), scales)] + slc.eval_mp(xm, bits)
        size = max(abs(v) for v in r)
        if size < target:
            break
        xf = np.array([complex(v) for v in xm])
        _, J = _stack_float(system, slc, xf)
        # rescale float rows to the unnormalized residual convention used above
        rf = np.array([complex(v / size) for v in r])
        step = _lstsq_step(J, rf, free)
        xm = [v - ctx.mpc(s) * size for v, s in zip(xm, step)]
        it += 1
    else:
        raise Diverged(f"refinement stalled at residual {mpmath_str(size)}")
    res = certify_residual(system, xm, bits)
    return VarietyPoint(xm, res, "newton", bits, c, it)


def mpmath_str(x) -> str:
    import mpmath
    return mpmath.nstr(x, 5)


def refine(system: PolynomialSystem, slc: Slice, point: VarietyPoint, bits: int, tol: float) -> VarietyPoint:
    """Re-run the refinement stage at a higher precision."""
    return gauss_newton(system, slc, point.coords, bits, tol)


def chart_of(point) -> int:
    return int(np.argmax([abs(complex(v)) for v in _mp_point(point, 53)]))


def continue_slice(system: PolynomialSystem, slc: Slice, start, delta, steps: int = 8, bits: int = DEFAULT_BITS,
                   tol: float = 1e-60) -> tuple:
    """Move the slice constants by ``delta`` in ``steps`` stages, tracking the point."""
    x = start
    cur = slc
    for s in range(1, steps + 1):
        cur = slc.shifted([d * s / steps for d in delta])
        pt = gauss_newton(system, cur, x, bits, tol, float_only=s < steps)
        x = pt.coords
    return pt, cur


def dedupe(points, tol: float = 1e-20) -> list:
    """Drop points within ``tol`` (max-norm, common chart) of an earlier one."""
    out = []
    for p in points:
        if all(q.distance(p) > tol for q in out):
            out.append(p)
    return out
