"""surface_checks: relation spans, involution, lines, incidence, invariants, dataset."""

import numpy as np
import pytest

from ballq.algebra.gaussian import GaussianRational
from ballq.errors import DatasetCorrupt
from ballq.grouprep.matrices import MatrixRepresentation, action_matrix, matrix_images
from ballq.surface import dataset
from ballq.surface.invariants import cubic_invariant_dimension, xy_invariant_counts, xyz_quadric_counts
from ballq.surface.lines import (ProjectiveLine, exact_points, line_incidence_graph, line_residual, lines_on_H,
                                 verify_lines_in_ideal)
from ballq.surface.relations import orbit_span, verify_involution

G_ = GaussianRational


def identity(n):
    return [[G_(int(i == j)) for j in range(n)] for i in range(n)]


# -- relation spans ----------------------------------------------------------------

def test_span_dimensions(ws):
    a, b, s = ws.spans
    assert (a.dim, b.dim, s.dim) == (21, 14, 35)


def test_span_layers_monotone(ws):
    layers = ws.span.layers
    assert layers == sorted(layers) and layers[-1] == 35


@pytest.mark.parametrize("layout", ["columns", "rows"])
def test_action_matrix_roundtrip(data, layout):
    for M in data.g_xy.generators:
        assert action_matrix(matrix_images(M, data.xy_frame, layout), data.xy_frame, layout) == M


def test_substitution_convention_preserves_span(ws, data):
    # each generator, read as x_j -> sum_i M[i][j] x_i, maps the span into itself
    span = ws.span
    for k, _ in enumerate(data.g_xy.generators):
        imgs = data.g_xy.image_polys(k)
        for f in span.polynomials()[:6]:
            assert span.contains(f.substitute(imgs))


def test_transposed_convention_is_rejected(ws, data):
    span = ws.span
    moved = 0
    for M in data.g_xy.generators:
        imgs = matrix_images(M, data.xy_frame, "rows")
        moved += sum(not span.contains(f.substitute(imgs)) for f in span.polynomials())
    assert moved > 0


def test_involution(ws, data):
    r = verify_involution(data.g_xy, ws.span)
    assert all(r.commutes) and r.span_stable


def test_involution_identity_rep(data):
    rep = MatrixRepresentation(data.xy_frame, [identity(13)])
    assert all(verify_involution(rep).commutes)


# -- lines -----------------------------------------------------------------------

def test_seed_line_parametrization(data):
    L = ProjectiveLine.through(data.line.A, data.line.B)
    a, b = exact_points(L, [(1, 0), (0, 1)])
    assert a == list(L.A) and b == list(L.B)
    # the RREF line and the printed one span the same plane
    assert ProjectiveLine.through(a, b) == L


def test_line_points_satisfy_relations(ws):
    rng = np.random.default_rng(5)
    L = ws.line_orbit.lines[0]
    params = [(G_(int(rng.integers(-9, 10)), int(rng.integers(-9, 10)), int(rng.integers(1, 9))), 1)
              for _ in range(100)]
    pts = exact_points(L, params)
    assert len(pts) == 100
    assert all(f.evaluate(p) == 0 for p in pts[:20] for f in ws.span.polynomials())


def test_line_orbit(ws):
    o = ws.line_orbit
    assert len(o) == 126
    assert o.n_g_orbits == 2
    assert o.orbit_sizes("g") == [63, 63]


def test_lines_on_h(ws, data):
    on = lines_on_H(ws.line_orbit.lines, data.h_form)
    assert len(on) == 42
    assert len(ws.line_orbit) - len(on) == 84
    assert lines_on_H([], data.h_form) == []


def test_lines_in_ideal(ws):
    r = verify_lines_in_ideal(ws.line_orbit.lines, ws.span)
    assert r.ok and r.checked == 126


def test_lines_in_ideal_float_oracle(ws):
    # independent: float evaluation at random complex points of each line
    rng = np.random.default_rng(1)
    sys = ws.system
    for L in ws.line_orbit.lines:
        A = np.array([complex(c) for c in L.A])
        B = np.array([complex(c) for c in L.B])
        u, v = rng.normal(size=2) + 1j * rng.normal(size=2)
        x = u * A + v * B
        assert np.max(np.abs(sys.eval_float(x))) < 1e-9 * max(1, np.max(np.abs(x))) ** 2


def test_perturbed_line_leaves_surface(ws):
    L = ws.line_orbit.lines[0]
    A = list(L.A)
    A[0] = A[0] + G_(1, 0, 97)
    K = ProjectiveLine.through(A, L.B)
    assert any(line_residual(K, f) for f in ws.span.polynomials())


def test_incidence_connected(ws):
    g = line_incidence_graph(ws.line_orbit.lines)
    assert g.connected
    assert all(a != b for a, b in g.edges)


def test_incidence_disjoint_lines():
    def e(k):
        return [G_(int(i == k)) for i in range(13)]

    L = ProjectiveLine.through(e(0), e(1))
    K = ProjectiveLine.through(e(2), e(3))
    g = line_incidence_graph([L, K])
    assert g.edges == [] and g.n_components == 2
    assert line_incidence_graph([L]).edges == []


# -- invariants ------------------------------------------------------------------

def test_g21_invariants_xy(ws, ctx):
    c = xy_invariant_counts(ws.span, (1, 2, 3), ctx)
    assert c.quotient == {1: 1, 2: 4, 3: 8}
    assert c.polynomial[2] == 5


def test_g21_quotient_degree2_character_oracle(ws, ctx):
    # 5 polynomial invariants minus the G21-fixed part of the chi6 + chi7 relation module
    mult = [0] * 14
    mult[5] = mult[6] = 1
    assert 5 - ctx.fixed_dim(mult) == 4


def test_g21_quadrics_27(ws, ctx):
    c = xyz_quadric_counts(ws.span, ctx)
    assert (c.quotient[0], c.quotient[1], c.quotient[2], c.quotient["total"]) == (4, 3, 3, 10)


@pytest.mark.parametrize("prefix", ["y", "z"])
def test_cubic_invariants(ctx, prefix):
    assert cubic_invariant_dimension(prefix, ctx) == 1


# -- dataset -----------------------------------------------------------------------

def test_manifest_matches():
    dataset.verify_manifest()


def test_manifest_corruption_detected(monkeypatch):
    bad = dict(dataset.MANIFEST)
    bad["seeds_z3.json"] = "0" * 64
    monkeypatch.setattr(dataset, "MANIFEST", bad)
    with pytest.raises(DatasetCorrupt):
        dataset.verify_manifest()
    with pytest.raises(DatasetCorrupt):
        dataset._load("seeds_z3.json")


def test_orbit_span_of_single_seed_is_module(data):
    sp = orbit_span([data.seeds[1]], data.g_xy)
    assert sp.dim == 14
