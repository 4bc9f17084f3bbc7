"""algebra_core: Q(i), F_101 reduction, sparse polynomials, Macaulay ranks."""

from fractions import Fraction
from math import comb

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from ballq.algebra.eqfile import parse_equations, parse_polynomial, read_equations, write_equations
from ballq.algebra.gaussian import GaussianInt, GaussianRational, gaussian_gcd
from ballq.algebra.linalg import nullspace, rank, rref
from ballq.algebra.modp import rank_mod_p
from ballq.algebra.poly import (SparsePolynomial, VariableFrame, degrevlex_cmp, frame, monomials_of_degree)
from ballq.algebra.primefield import PrimeField, sqrt_minus_one
from ballq.errors import DenominatorDivisibleByP, NonHomogeneousGenerator
from ballq.hilbert.macaulay import GradedIdeal, macaulay_matrix, macaulay_rank

P = 101
F = PrimeField(P)
XY = frame(("x", 6), ("y", 7))

ints = st.integers(-10**6, 10**6)
dens = st.integers(1, 10**4).filter(lambda d: d % P)
gq = st.builds(GaussianRational, ints, ints, dens)


def poly(fr, terms):
    return SparsePolynomial(fr, {tuple(e): GaussianRational.coerce(c) for e, c in terms.items()})


# -- Q(i) and F_p -------------------------------------------------------------

def test_sqrt_minus_one_is_ten():
    assert sqrt_minus_one(P) == 10
    assert (10 * 10 + 1) % P == 0


def test_canonical_form():
    a = GaussianRational(2, 4, 6)
    assert (a.re, a.im, a.den) == (1, 2, 3)
    assert GaussianRational(-1, 0, -2) == GaussianRational(1, 0, 2)


def test_generator_of_prime_reduces_to_zero():
    assert F.reduce(GaussianRational(10, -1)) == 0


def test_one_third():
    assert F.reduce(GaussianRational(1, 0, 3)) == 34


def test_denominator_divisible_by_p():
    with pytest.raises(DenominatorDivisibleByP):
        F.reduce(GaussianRational(1, 0, 101))


@given(gq, gq)
def test_reduction_is_ring_homomorphism(a, b):
    assert F.reduce(a + b) == (F.reduce(a) + F.reduce(b)) % P
    assert F.reduce(a * b) == F.reduce(a) * F.reduce(b) % P


@given(gq, gq.filter(bool))
def test_division_roundtrip(a, b):
    assert (a / b) * b == a


@given(ints, ints, ints, ints)
def test_gaussian_gcd_divides(a, b, c, d):
    x, y = GaussianInt(a, b), GaussianInt(c, d)
    g = gaussian_gcd(x, y)
    if g:
        assert not x % g and not y % g


def test_sympy_oracle_for_arithmetic():
    a, b = GaussianRational(3, -7, 5), GaussianRational(-2, 9, 11)
    s = (sympy.Rational(3, 5) - sympy.Rational(7, 5) * sympy.I) / (sympy.Rational(-2, 11) + sympy.Rational(9, 11) * sympy.I)
    q = a / b
    assert sympy.nsimplify(s - (sympy.Rational(q.re, q.den) + sympy.I * sympy.Rational(q.im, q.den))) == 0


# -- polynomials ---------------------------------------------------------------

def test_reduce_polynomial_mod_p():
    f = poly(XY, {(2,) + (0,) * 12: 1, (0,) * 6 + (1,) + (0,) * 6: GaussianRational(0, 1)})
    g = f.reduce_mod(P)
    assert g.terms == {(2,) + (0,) * 12: 1, (0,) * 6 + (1,) + (0,) * 6: 10}
    h = (poly(XY, {(1,) + (0,) * 12: GaussianRational(10, -1)})).reduce_mod(P)
    assert not h


def test_evaluate_zero_vector():
    f = poly(XY, {(1, 1) + (0,) * 11: 3, (0,) * 12 + (2,): GaussianRational(1, 2)})
    assert f.evaluate([GaussianRational(0)] * 13) == 0


def test_evaluate_w_example():
    W = frame(("W", 8, 0))
    f = parse_polynomial("-2*W1**2 + W2*W3 + W0*W7", W)
    assert f.evaluate([GaussianRational(v) for v in (1, 1, 1, 2, 0, 0, 0, 0)]) == 0


def test_seed_vanishes_on_published_line(data):
    L = data.line
    f = data.seeds[0]
    for u, v in [(1, 0), (0, 1), (3, GaussianRational(-2, 5)), (GaussianRational(1, 1, 7), 2)]:
        pt = [GaussianRational.coerce(u) * a + GaussianRational.coerce(v) * b for a, b in zip(L.A, L.B)]
        assert f.evaluate(pt) == 0


exps = st.lists(st.integers(0, 3), min_size=4, max_size=4).map(tuple)


@given(exps, exps)
def test_degrevlex_is_total_and_graded(a, b):
    c = degrevlex_cmp(a, b)
    assert c == -degrevlex_cmp(b, a)
    assert (c == 0) == (a == b)
    if sum(a) != sum(b):
        assert (c > 0) == (sum(a) > sum(b))


def test_degrevlex_small_case():
    # x0 > x1 > x2 in degree 1; x1^2 > x0*x2 in degrevlex
    assert degrevlex_cmp((1, 0, 0), (0, 1, 0)) > 0
    assert degrevlex_cmp((0, 2, 0), (1, 0, 1)) > 0


small_polys = st.dictionaries(exps, st.integers(-5, 5).filter(bool), max_size=5)


@settings(max_examples=40)
@given(small_polys, small_polys, st.lists(st.integers(-4, 4), min_size=4, max_size=4))
def test_evaluation_is_ring_homomorphism(a, b, pt):
    fr = frame(("t", 4))
    f, g = poly(fr, a), poly(fr, b)
    x = [GaussianRational(v) for v in pt]
    assert (f * g).evaluate(x) == f.evaluate(x) * g.evaluate(x)
    assert (f + g).evaluate(x) == f.evaluate(x) + g.evaluate(x)


def test_weighted_frame_degree():
    fr = VariableFrame(("a", "b"), (1, 2))
    f = poly(fr, {(2, 0): 1, (0, 1): 1})
    assert f.is_homogeneous() and f.degree() == 2


# -- linear algebra ------------------------------------------------------------

mats = st.lists(st.lists(st.integers(-3, 3), min_size=4, max_size=4), min_size=1, max_size=5)


@settings(max_examples=40)
@given(mats)
def test_rank_of_transpose(M):
    A = [[GaussianRational(v) for v in row] for row in M]
    T = [list(c) for c in zip(*A)]
    assert rank(A) == rank(T)
    assert rank(A) == np.linalg.matrix_rank(np.array(M, dtype=float))


@settings(max_examples=40)
@given(mats)
def test_nullspace_annihilates(M):
    A = [[GaussianRational(v) for v in row] for row in M]
    for v in nullspace(A):
        assert all(sum((a * b for a, b in zip(row, v)), GaussianRational(0)) == 0 for row in A)
    assert len(nullspace(A)) == 4 - rank(A)


def test_rank_mod_p_zero_matrix():
    assert rank_mod_p(np.zeros((3, 5)), P) == 0


def test_rank_mod_p_detects_p_torsion():
    M = np.array([[1, 2], [3, 6 + P]], dtype=float)
    assert rank_mod_p(M, P) == 1


def test_rref_pivots():
    ech, piv = rref([[GaussianRational(2), GaussianRational(4)], [GaussianRational(1), GaussianRational(3)]])
    assert piv == [0, 1]


# -- Macaulay matrices ---------------------------------------------------------

def test_macaulay_shape_single_generator():
    x1 = XY.var(0)
    M = macaulay_matrix([x1 * x1], 2, XY)
    assert M.shape == (1, 91)
    assert np.count_nonzero(M.dense_mod_p(P)) == 1


def test_macaulay_shapes_for_z3(ws):
    gens = ws.span.polynomials()
    assert macaulay_matrix(gens, 2, XY).shape == (35, 91)
    assert macaulay_matrix(gens, 3, XY).shape == (35 * 13, comb(15, 3))


def test_macaulay_ranks_for_z3(ws):
    gens = ws.span.polynomials()
    assert macaulay_rank(gens, 2, P, XY) == (91, 35)
    n, r = macaulay_rank(gens, 3, P, XY)
    assert (n, r) == (455, 455 - 140)


def test_rank_degree3_independent_elimination(ws):
    # oracle: plain Gaussian elimination mod p on the dense matrix
    M = macaulay_matrix(ws.span.polynomials(), 3, XY).dense_mod_p(P).astype(np.int64) % P
    A = M.copy()
    r = 0
    for c in range(A.shape[1]):
        piv = next((i for i in range(r, A.shape[0]) if A[i, c]), None)
        if piv is None:
            continue
        A[[r, piv]] = A[[piv, r]]
        A[r] = A[r] * pow(int(A[r, c]), -1, P) % P
        nz = np.nonzero(A[:, c])[0]
        for i in nz:
            if i != r:
                A[i] = (A[i] - A[i, c] * A[r]) % P
        r += 1
    assert r == 315


def test_graded_ideal_rejects_inhomogeneous():
    x1 = XY.var(0)
    with pytest.raises(NonHomogeneousGenerator):
        GradedIdeal(XY, [x1 * x1 + x1])


# -- equation files ------------------------------------------------------------

def test_parse_equations_text():
    fr, eqs = parse_equations("vars: a b c\n# comment\na*b - I*c**2\n(1/3)*a**2 + b*c  # trailing\n")
    assert fr.names == ("a", "b", "c")
    assert eqs[0].coefficient((0, 0, 2)) == GaussianRational(0, -1)
    assert eqs[1].coefficient((2, 0, 0)) == GaussianRational(1, 0, 3)


def test_equation_file_roundtrip(tmp_path):
    fr = frame(("U", 3, 0))
    f = parse_polynomial("U0*U1 + (2+3*i)/7*U2**2", fr)
    path = tmp_path / "eq.json"
    write_equations(path, fr, [f])
    fr2, eqs = read_equations(path)
    assert fr2 == fr and eqs == [f]


def test_fraction_coercion():
    assert GaussianRational.from_parts(Fraction(1, 2), Fraction(-1, 3)) == GaussianRational(3, -2, 6)
