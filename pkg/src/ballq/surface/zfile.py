"""Checks on a user-supplied equation set for the surface Z in P^9 (coordinates U0..U9).

Z's equations are external data.  Given them, the Hilbert polynomial is fitted
from Macaulay ranks, and points of Z with U0 = 0 are tested against the
embedded curve equations.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ..algebra.eqfile import read_equations
from ..algebra.primefield import DEFAULT_PRIME
from ..errors import ConfigError, Diverged, SingularJacobian
from ..hilbert.hilbert import HilbertFit, HilbertRecord, fit_hilbert_polynomial, hilbert_function
from ..hilbert.macaulay import GradedIdeal
from ..numeric.ball import DEFAULT_BITS, context
from ..numeric.newton import Slice, VarietyPoint, dedupe, gauss_newton
from ..numeric.polysys import PolynomialSystem
from .dataset import load_dataset

U = tuple(f"U{k}" for k in range(10))
EXPECTED_FIT = (Fraction(18), Fraction(-9), Fraction(1))
CURVE_TOL = 1e-40


def load_z_file(path) -> GradedIdeal:
    try:
        fr, eqs = read_equations(path, U)
    except (OSError, ValueError) as exc:
        raise ConfigError(f"cannot read Z equations from {path}: {exc}") from exc
    if tuple(fr.names) != U:
        raise ConfigError(f"Z equations must use the variables {' '.join(U)}")
    if not eqs:
        raise ConfigError("the Z file holds no equations")
    return GradedIdeal(fr, eqs, "Z")


def z_hilbert_fit(ideal: GradedIdeal, degrees=range(1, 7), from_degree: int = 3,
                  p: int = DEFAULT_PRIME) -> tuple[HilbertRecord, HilbertFit]:
    rec = hilbert_function(ideal, degrees, p)
    return rec, fit_hilbert_polynomial(rec, from_degree)


@dataclass
class CurveCheck:
    points: list
    values: list  # per point: max normalized |curve equation| upper bound
    attempts: int

    @property
    def max_value(self):
        return max(self.values) if self.values else None

    @property
    def ok(self) -> bool:
        return bool(self.points) and all(v < CURVE_TOL for v in self.values)


def points_on_hyperplane_section(ideal: GradedIdeal, rng: np.random.Generator, count: int = 3,
                                 coordinate: int = 0, bits: int = DEFAULT_BITS, attempts: int = 200) -> tuple:
    """Points of V(ideal) with U_coordinate = 0, found by Gauss-Newton from random starts on random lines."""
    fr = ideal.frame
    n = len(fr)
    system = PolynomialSystem(list(ideal.generators) + [fr.var(coordinate)])
    ctx = context(bits)
    found = []
    tried = 0
    while len(found) < count and tried < attempts:
        tried += 1
        chart = int(rng.choice([j for j in range(n) if j != coordinate]))
        A = rng.integers(-5, 6, (1, n)) + 1j * rng.integers(-5, 6, (1, n))
        slc = Slice(A, [ctx.mpc(complex(*rng.normal(size=2)))], chart)
        start = rng.normal(size=n) + 1j * rng.normal(size=n)
        start[coordinate] = 0
        try:
            pt = gauss_newton(system, slc, list(start), bits)
        except (Diverged, SingularJacobian):
            continue
        found = dedupe(found + [pt])
    return found, tried


def curve_check(ideal: GradedIdeal, rng: np.random.Generator, count: int = 3, bits: int = DEFAULT_BITS,
                attempts: int = 200) -> CurveCheck:
    """Evaluate the embedded curve equations (balls) at points of Z with U0 = 0."""
    data = load_dataset()
    if data.c_frame.names != ideal.frame.names:
        raise ConfigError("curve equations and Z equations use different frames")
    pts, tried = points_on_hyperplane_section(ideal, rng, count, 0, bits, attempts)
    curve = PolynomialSystem(data.c_equations)
    vals = []
    for pt in pts:
        balls = pt.balls()
        vals.append(max(v.abs_upper() / s for v, s in zip(curve.eval_ball(balls), curve.scale_factors())))
    return CurveCheck(pts, vals, tried)


def point_residual(ideal: GradedIdeal, pt: VarietyPoint):
    system = PolynomialSystem(ideal.generators)
    return max(v.abs_upper() / s for v, s in zip(system.eval_ball(pt.balls()), system.scale_factors()))
