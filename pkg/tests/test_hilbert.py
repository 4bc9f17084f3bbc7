"""hilbert_engine: Macaulay Hilbert functions, polynomial fits, Groebner, smoothness, Z files."""

from fractions import Fraction

import numpy as np
import pytest

from ballq.algebra.poly import SparsePolynomial, VariableFrame, frame
from ballq.errors import ConfigError, NotStabilized, ResourceLimit
from ballq.hilbert.groebner import Budget, groebner_basis
from ballq.hilbert.hilbert import fit_hilbert_polynomial, hilbert_function, stabilized_window
from ballq.hilbert.macaulay import GradedIdeal
from ballq.hilbert.smooth import INCONCLUSIVE, SUCCESS, jacobian_minor_check
from ballq.surface.zfile import EXPECTED_FIT, curve_check, load_z_file, z_hilbert_fit

XY = frame(("x", 6), ("y", 7))


def test_z3_hilbert_low_degrees(ws):
    rec = hilbert_function(ws.z3_ideal, range(1, 4))
    # oracle: 21k(k-1) + 14 for k >= 2, and no linear relations
    assert rec.values() == {1: 13, 2: 56, 3: 140}
    assert all(rec.value(k) == 21 * k * (k - 1) + 14 for k in (2, 3))


def test_z3_fit():
    fit = fit_hilbert_polynomial({2: 56, 3: 140, 4: 266}, 2)
    assert (fit.a, fit.b, fit.c) == (21, -21, 14)
    assert (fit.D2, fit.KD, fit.chi) == (42, 42, 14)


def test_constant_record_fit():
    fit = fit_hilbert_polynomial({3: 7, 4: 7, 5: 7, 6: 7}, 3)
    assert fit.a == 0 and fit.D2 == 0 and fit.chi == 7


def test_fit_rejects_unstable_record():
    with pytest.raises(NotStabilized):
        fit_hilbert_polynomial({1: 1, 2: 4, 3: 9, 4: 17}, 1)


def test_stabilized_window():
    vals = {d: d * d - d + 2 for d in range(1, 8)}
    vals[1] = 0
    assert stabilized_window(vals, lambda d: d * d - d + 2) == (2, 7)
    assert stabilized_window({1: 5}, lambda d: 0) is None


def test_z1_weighted_ideal(data):
    I = GradedIdeal(data.z1_frame, data.z1_equations)
    assert len(I.generators) == 11
    rec = hilbert_function(I, range(1, 15))
    win = stabilized_window(rec.values(), lambda d: d * d - d + 2)
    assert win is not None and win[1] == 14 and win[1] - win[0] >= 2
    for d in range(win[0], 15):
        assert rec.value(d) == d * d - d + 2


def test_weighted_monomial_count():
    # P(1,2): degree-4 monomials a^4, a^2 b, b^2
    fr = VariableFrame(("a", "b"), (1, 2))
    assert hilbert_function(GradedIdeal(fr, []), [4]).value(4) == 3


def test_groebner_linear_ideal_is_itself():
    G = groebner_basis(XY.gens(), XY)
    assert sorted(G.leading_monomials()) == sorted(g.leading_monomial() for g in XY.gens())
    assert G.krull_dimension() == 0 and not G.is_unit()


def test_groebner_unit_ideal():
    fr = frame(("t", 2))
    t1, t2 = fr.gens()
    G = groebner_basis([t1 * t2 - SparsePolynomial.constant(fr, 1), t1], fr)
    assert G.is_unit()


def test_groebner_budget():
    fr = frame(("t", 4))
    t = fr.gens()
    gens = [t[0] ** 3 - t[1] * t[2] * t[3], t[1] ** 3 - t[0] * t[2] ** 2, t[2] ** 3 - t[3] ** 2 * t[0]]
    with pytest.raises(ResourceLimit):
        groebner_basis(gens, fr, budget=Budget(max_pairs=1))


def test_groebner_krull_of_curve():
    fr = frame(("t", 3))
    a, b, c = fr.gens()
    assert groebner_basis([a * c - b * b], fr).krull_dimension() == 2


# -- smoothness ------------------------------------------------------------------

def test_smooth_linear():
    fr = frame(("x", 1))
    assert jacobian_minor_check(GradedIdeal(fr, [fr.var(0)]), 1).status == SUCCESS


def test_smooth_double_point():
    fr = frame(("x", 1))
    x = fr.var(0)
    assert jacobian_minor_check(GradedIdeal(fr, [x * x]), 1).status == INCONCLUSIVE


def test_smooth_conic_and_node():
    fr = frame(("t", 3))
    a, b, c = fr.gens()
    assert jacobian_minor_check(GradedIdeal(fr, [a * c - b * b]), 1, projective=True).ok
    assert not jacobian_minor_check(GradedIdeal(fr, [a * b]), 1, projective=True).ok


def test_smooth_resource_cap(ws):
    with pytest.raises(ResourceLimit):
        jacobian_minor_check(ws.z3_ideal, 10, projective=True, max_terms=1000)


# -- Z equation files --------------------------------------------------------------

@pytest.fixture()
def synthetic_z(tmp_path, data):
    """The curve equations without U0: a scheme whose U0 = 0 section is the curve."""
    lines = ["vars: " + " ".join(data.c_frame.names)]
    lines += [str(f).replace("^", "**") for f in data.c_equations if f != data.c_frame.var(0)]
    path = tmp_path / "z.txt"
    path.write_text("\n".join(lines) + "\n")
    return path


def test_load_z_file_errors(tmp_path):
    with pytest.raises(ConfigError):
        load_z_file(tmp_path / "missing.txt")
    bad = tmp_path / "bad.txt"
    bad.write_text("vars: a b\na*b\n")
    with pytest.raises(ConfigError):
        load_z_file(bad)


def test_curve_check_on_synthetic_file(synthetic_z):
    I = load_z_file(synthetic_z)
    r = curve_check(I, np.random.default_rng(0), count=2)
    assert r.ok and len(r.points) == 2


def test_expected_fit_constants():
    assert EXPECTED_FIT == (Fraction(18), Fraction(-9), Fraction(1))
    # D^2 = 36, K.D = 18, chi = 1 by Riemann-Roch
    assert (2 * EXPECTED_FIT[0], -2 * EXPECTED_FIT[1], EXPECTED_FIT[2]) == (36, 18, 1)


def test_z_hilbert_fit_on_synthetic_curve_ideal(synthetic_z):
    rec, fit = z_hilbert_fit(load_z_file(synthetic_z), range(1, 6), from_degree=3)
    assert rec.value(1) == 10  # no linear generators
    assert all(fit(k) == rec.value(k) for k in (3, 4, 5))
