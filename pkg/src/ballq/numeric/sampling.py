"""Point sampling on the surface: from exact line points into generic position."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..algebra.gaussian import GaussianRational
from ..errors import Diverged, SingularJacobian
from .ball import DEFAULT_BITS, context
from .newton import Slice, VarietyPoint, _mp_point, chart_of, continue_slice, gauss_newton
from .polysys import PolynomialSystem


def random_line_point(lines, rng: np.random.Generator):
    """Exact point u A + v B on a random line, (u : v) = (1 : t) with t a small Gaussian integer."""
    L = lines[int(rng.integers(len(lines)))]
    t = GaussianRational(int(rng.integers(-4, 5)), int(rng.integers(-4, 5)))
    return L.point(1, t)


def sample_points(system: PolynomialSystem, lines, count: int, rng: np.random.Generator,
                  bits: int = DEFAULT_BITS, tol: float = 1e-60, steps: int = 8, max_attempts: int | None = None
                  ) -> list:
    """Generic points: start on a line, then slide a random slice off it by continuation."""
    out = []
    attempts = 0
    max_attempts = max_attempts or 4 * count
    while len(out) < count:
        attempts += 1
        if attempts > max_attempts:
            raise Diverged(f"only {len(out)} of {count} points after {attempts - 1} attempts")
        p0 = random_line_point(lines, rng)
        c = chart_of(p0)
        slc = Slice.through(p0, c, rng, bits=bits)
        delta = [complex(*rng.normal(0, 0.5, 2)) for _ in slc.b]
        try:
            pt, _ = continue_slice(system, slc, p0, delta, steps, bits, tol)
        except (Diverged, SingularJacobian):
            continue
        pt.provenance = "newton"
        out.append(pt)
    return out


@dataclass
class PerturbationTrial:
    converged: bool
    residual: object
    distance: object  # to the exact start point
    exact_residual_zero: bool


def perturbation_trial(system: PolynomialSystem, lines, rng: np.random.Generator, eps: float = 1e-3,
                       bits: int = DEFAULT_BITS, tol: float = 1e-60) -> PerturbationTrial:
    """Perturb an exact line point by ``eps``, run Gauss-Newton on a slice through it."""
    p0 = random_line_point(lines, rng)
    exact_zero = not any(system_exact_values(system, p0))
    c = chart_of(p0)
    slc = Slice.through(p0, c, rng, bits=bits)
    x = np.array([complex(v) for v in _mp_point(p0, 53)])
    x = x / x[c]
    start = x + eps * (rng.normal(size=x.shape) + 1j * rng.normal(size=x.shape))
    ctx = context(bits)
    try:
        pt = gauss_newton(system, slc, start, bits, tol)
    except (Diverged, SingularJacobian):
        return PerturbationTrial(False, None, None, exact_zero)
    ref = _mp_point(p0, bits)
    ref = VarietyPoint([v / ref[c] for v in ref], ctx.mpf(0), "line-exact", bits, c)
    return PerturbationTrial(bool(pt.residual < tol), pt.residual, ref.distance(pt), exact_zero)


def system_exact_values(system: PolynomialSystem, point) -> list:
    pt = [GaussianRational.coerce(v) for v in point]
    return [f.evaluate(pt) for f in system.polys]


def random_projective_points(n: int, count: int, rng: np.random.Generator, bits: int = DEFAULT_BITS) -> list:
    ctx = context(bits)
    return [[ctx.mpc(complex(*rng.normal(size=2))) for _ in range(n)] for _ in range(count)]
