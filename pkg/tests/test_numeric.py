"""numeric_kernel: balls, recognition, Gauss-Newton, kernels, Lefschetz counts, the z-lift."""

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ballq.algebra.gaussian import GaussianRational
from ballq.algebra.poly import monomials_of_degree
from ballq.errors import InsufficientPrecision, NoSolution
from ballq.numeric.ball import BallComplex, context
from ballq.numeric.kernel import numeric_kernel
from ballq.numeric.lefschetz import lefschetz_dimensions
from ballq.numeric.newton import Slice, dedupe, gauss_newton
from ballq.numeric.recognize import recognize_gaussian_rational
from ballq.numeric.sampling import perturbation_trial, random_projective_points, sample_points

ints = st.integers(-10**9, 10**9)
gq = st.builds(GaussianRational, ints, ints, st.integers(1, 10**6))


def mp_exact(q, bits=256):
    ctx = context(bits)
    return ctx.mpc(ctx.mpf(q.re) / q.den, ctx.mpf(q.im) / q.den)


# -- balls ---------------------------------------------------------------------------

@settings(max_examples=60)
@given(gq, gq)
def test_ball_arithmetic_encloses_exact_result(a, b):
    A, B = BallComplex.exact(a, 128), BallComplex.exact(b, 128)
    ctx = context(512)
    for ball, exact in [(A + B, a + b), (A - B, a - b), (A * B, a * b)]:
        with ctx.workprec(512):
            d = abs(ctx.mpc(ball.mid) - mp_exact(exact, 512))
        assert d <= ball.rad
    if b:
        Q = A / B
        with ctx.workprec(512):
            assert abs(ctx.mpc(Q.mid) - mp_exact(a / b, 512)) <= Q.rad


def test_ball_power_and_contains():
    x = BallComplex.exact(GaussianRational(1, 1, 3))
    y = x ** 3
    assert y.contains(GaussianRational(1, 1, 3) ** 3)


# -- recognition -----------------------------------------------------------------------

def test_recognize_half():
    b = BallComplex(mpmath.mpf(0.5), mpmath.mpf(10) ** -50)
    assert recognize_gaussian_rational(b, 10**12) == GaussianRational(1, 0, 2)


def test_recognize_two_three_sevenths():
    v = GaussianRational(2, 3, 7)
    assert recognize_gaussian_rational(BallComplex.exact(v, 256), 10**12) == v


def test_recognize_wide_ball_flags():
    with pytest.raises(InsufficientPrecision):
        recognize_gaussian_rational(BallComplex(0.25, 1e-3), 10**6)


small = st.integers(-10**5, 10**5)


@settings(max_examples=60)
@given(small, small, small, small)
def test_recognize_roundtrip(a, b, c, d):
    if not (c or d):
        return
    v = GaussianRational(a, b) / GaussianRational(c, d)
    assert recognize_gaussian_rational(BallComplex.exact(v, 256), 10**12) == v


# -- Gauss-Newton ----------------------------------------------------------------------

def test_perturbed_line_point_recovers(ws):
    rng = np.random.default_rng(11)
    t = perturbation_trial(ws.system, ws.line_orbit.lines, rng, 1e-3, 256, 1e-60)
    assert t.exact_residual_zero
    assert t.converged and t.residual < 1e-60


def test_start_at_exact_solution(ws):
    L = ws.line_orbit.lines[3]
    p = L.point(1, GaussianRational(2, 1))
    c = int(np.argmax([abs(complex(v)) for v in p]))
    slc = Slice.through(p, c, np.random.default_rng(2))
    pt = gauss_newton(ws.system, slc, p)
    exact = [mp_exact(v) / mp_exact(p[c]) for v in p]
    assert max(abs(a - b) for a, b in zip(pt.coords, exact)) < 1e-60
    # the float stage stops after its first (negligible) step
    assert gauss_newton(ws.system, slc, p, float_only=True).iterations == 1


def test_slice_points_at_most_degree(ws):
    rng = np.random.default_rng(7)
    A = rng.integers(-5, 6, (2, 13)) + 1j * rng.integers(-5, 6, (2, 13))
    ctx = context(256)
    slc = Slice(A, [ctx.mpc(complex(*rng.normal(size=2))) for _ in range(2)], 12)
    found = []
    for _ in range(25):
        try:
            found.append(gauss_newton(ws.system, slc, rng.normal(size=13) + 1j * rng.normal(size=13)))
        except Exception:
            continue
    pts = dedupe(found)
    assert 0 < len(pts) <= 42
    assert all(p.residual < 1e-60 for p in pts)


# -- kernels -------------------------------------------------------------------------

def test_kernel_random_points_is_zero():
    rng = np.random.default_rng(3)
    pts = random_projective_points(13, 110, rng)
    assert numeric_kernel(monomials_of_degree(13, 2), pts).dim == 0


def test_kernel_on_z3_points_small_degree(ws):
    # degree 1: no linear relations on Z3
    pts = sample_points(ws.system, ws.line_orbit.lines, 20, np.random.default_rng(4))
    assert numeric_kernel(monomials_of_degree(13, 1), pts).dim == 0


# -- Lefschetz -------------------------------------------------------------------------

def test_lefschetz_structure_sheaf():
    assert lefschetz_dimensions(63, 21, 0) == (14, 14, -7)


def test_lefschetz_2k():
    assert lefschetz_dimensions(63, 210, 1)[1] == 77


@pytest.mark.parametrize("N", [3, 21, 210])
def test_lefschetz_no_fixed_points(N):
    assert lefschetz_dimensions(0, N, 0) == (N // 3,) * 3


# -- z-lift ----------------------------------------------------------------------------

@pytest.fixture(scope="module")
def lift_setup(ws):
    from ballq.numeric import lift as L
    data = L.lift_data(ws.ctx)
    pts = L._z3_points(ws, 4, "test-lift")
    rel = L.diagonal_ratio(data, pts[:2])
    return L, data, rel, pts[2:]


def test_intertwiner_normalization(lift_setup):
    L, data, rel, _ = lift_setup
    assert len(data.chi11) == 28 and len(data.B) == 6 and len(data.C) == 6
    assert rel.spread < 1e-30


def test_each_sign_selects_one_branch(lift_setup):
    L, data, rel, pts = lift_setup
    for p in pts:
        cands = L.z_candidates(data, p.coords[:6], p.coords[6:13])
        assert len(cands) == 2
        for s in (1, -1):
            assert len(L.matching_branches(cands, s * rel.t0)) == 1


def test_lift_normalization_and_residual(lift_setup):
    L, data, rel, pts = lift_setup
    ctx = context(256)
    q = L.lift_to_z(pts[0], 1, data, rel)
    f = L._coef(ctx)
    cy = data.cubic_y.evaluate(q.coords[6:13], f)
    cz = data.cubic_z.evaluate(q.coords[13:], f)
    assert abs(cy - cz) < 1e-60 * abs(cy)
    assert q.residual < 1e-50


def test_lift_wrong_ratio_fails(lift_setup):
    L, data, rel, pts = lift_setup
    bogus = L.DiagonalRelation(rel.t0 * 2, 0.0, 0)
    with pytest.raises(NoSolution):
        L.lift_to_z(pts[0], 1, data, bogus)
