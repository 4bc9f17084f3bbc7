"""grouprep: closure, classes, characters, isotypic projectors, invariants."""

import numpy as np
import pytest

from ballq.algebra.gaussian import GaussianRational
from ballq.algebra.poly import frame, monomials_of_degree
from ballq.errors import NonIntegralMultiplicity
from ballq.grouprep.characters import decompose, format_decomposition, product, sym_power_character
from ballq.grouprep.chartable import u33_table
from ballq.grouprep.classes import character_of, conjugacy_classes
from ballq.grouprep.closure import closure
from ballq.grouprep.induced import invariant_subspace, isotypic_rank
from ballq.grouprep.matrices import MatrixRepresentation
from ballq.surface.context import XY, Y, Z

T = u33_table()
SIZES = (1, 864, 864, 63, 672, 63, 63, 504, 504, 504, 756, 756, 378, 56)


def cx(chi):
    return np.array([complex(v) for v in chi])


def gi(E):
    return E[0] + 1j * E[1]


def float_inner(a, b, sizes):
    return np.sum(np.array(sizes) * a * np.conj(b)) / 6048


def test_trivial_group():
    fr = frame(("t", 2))
    one = [[GaussianRational(1), GaussianRational(0)], [GaussianRational(0), GaussianRational(1)]]
    G = closure(MatrixRepresentation(fr, [one]))
    assert G.order == 1
    assert conjugacy_classes(G).n_classes == 1


def test_closure_xy(data):
    assert closure(data.g_xy).order == 6048


def test_g21_order(data):
    assert closure(data.g21_xy).order == 21


def test_classes(ctx):
    C = ctx.classes
    assert C.n_classes == 14
    assert sum(C.sizes) == 6048
    assert sorted(C.sizes) == sorted(SIZES)


def test_class_sizes_from_column_orthogonality(ctx):
    # oracle: |G| / |C_G(g)| with centralizer orders from the table columns, floats only
    V = np.array([[complex(v) for v in row] for row in T.values])
    cent = np.sum(np.abs(V) ** 2, axis=0).real
    assert np.allclose(6048 / cent, ctx.classes.sizes)


def test_class_sizes_by_orbit_counting(ctx):
    # oracle: conjugate representatives directly and count the orbit
    G = ctx.G
    gens = [gi(G.elements[k]) for k in G.generator_ids]
    inv = [np.linalg.inv(g) for g in gens]
    for c in (3, 12, 13):  # 2a, 4c, 3b
        rep = gi(G.elements[ctx.classes.representatives[c]])
        seen = {tuple(np.round(rep.ravel(), 6))}
        todo = [rep]
        while todo:
            m = todo.pop()
            for g, h in zip(gens, inv):
                n = h @ m @ g
                key = tuple(np.round(n.ravel(), 6))
                if key not in seen:
                    seen.add(key)
                    todo.append(n)
        assert len(seen) == ctx.classes.sizes[c]


@pytest.mark.parametrize("prefix,k", [("x", 2), ("y", 4), ("z", 6)])
def test_block_characters(ctx, prefix, k):
    assert ctx.block_character(prefix) == T.row(k)


def test_block_trace_oracle(ctx):
    # traces of representatives straight from the matrices
    G = ctx.G
    for c, r in enumerate(ctx.classes.representatives):
        M = gi(G.elements[r])
        assert np.isclose(np.trace(M[13:, 13:]), complex(T.row(6)[c]))
        assert np.isclose(np.trace(M[:6, :6]), complex(T.row(2)[c]))


CASES = {
    "Sym2(chi1)": (lambda C: sym_power_character(T.row(1), 2, C), "chi1"),
    "Sym2(chi2)": (lambda C: sym_power_character(T.row(2), 2, C), "chi7"),
    "Sym2(chi4)": (lambda C: sym_power_character(T.row(4), 2, C), "chi5 + chi7"),
    "chi2*chi4": (lambda C: product(T.row(2), T.row(4)), "chi6 + chi12"),
    "Sym2(chi6)": (lambda C: sym_power_character(T.row(6), 2, C), "chi1 + chi6 + chi7 + chi8 + chi9 + chi10"),
    "chi2*chi6": (lambda C: product(T.row(2), T.row(6)), "chi2 + chi4 + chi5 + chi13 + chi14"),
    "chi4*chi6": (lambda C: product(T.row(4), T.row(6)), "chi2 + chi11 + chi13 + chi14"),
}


@pytest.mark.parametrize("name", sorted(CASES))
def test_decompositions(ctx, name):
    f, want = CASES[name]
    assert format_decomposition(decompose(f(ctx.classes), T)) == want


def test_sym2_chi2_plus_chi3(ctx):
    from ballq.grouprep.characters import add
    got = format_decomposition(decompose(sym_power_character(add(T.row(2), T.row(3)), 2, ctx.classes), T))
    assert got == "chi1 + chi7 + chi8 + chi9 + chi10"


def test_sym2_oracle_from_matrices(ctx):
    # (tr(g)^2 + tr(g^2)) / 2 on the y block, decomposed with float inner products
    G = ctx.G
    vals = []
    for r in ctx.classes.representatives:
        M = gi(G.elements[r])[6:13, 6:13]
        vals.append((np.trace(M) ** 2 + np.trace(M @ M)) / 2)
    mult = [float_inner(np.array(vals), cx(row), ctx.classes.sizes).real for row in T.values]
    assert np.allclose(mult, [0, 0, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0])


def test_non_integral_multiplicity():
    bad = tuple(GaussianRational(v) for v in [1] + [0] * 13)
    with pytest.raises(NonIntegralMultiplicity):
        decompose(bad, T)


def test_projector_rank_chi6_on_xy(ctx):
    assert isotypic_rank(ctx.G, ctx.classes, T.row(6), 2, XY) == 14


@pytest.mark.parametrize("names", [Y, Z])
def test_cubic_invariant_rank_one(ctx, names):
    assert isotypic_rank(ctx.G, ctx.classes, T.row(1), 3, names) == 1


def test_h_form(ctx, data):
    rows = invariant_subspace(ctx.G21_xy, 1)
    assert len(rows) == 1
    mons = monomials_of_degree(data.xy_frame, 1)
    h = data.h_form.coefficient_vector(mons)
    v = rows[0]
    k = next(i for i, c in enumerate(h) if c)
    assert all(v[i] * h[k] == h[i] * v[k] for i in range(13))
    y = {m.index(1): c for m, c in zip(mons, h)}
    c = GaussianRational(-2, -3)
    assert [y[i] for i in range(6, 13)] == [7, 1, 1, c, c, 1, 1]


def test_g21_embedding_convention(ctx, data):
    """The printed G21 z-generator is a different element of G; the corrected one lies in G."""
    G = ctx.G
    printed = closure(data.g21_full(printed=True))
    fixed = closure(data.g21_full())
    assert printed.order == fixed.order == 21
    assert all(G.contains(e) for e in fixed.elements)
    assert not all(G.contains(e) for e in printed.elements)


def test_character_of_y_block(ctx):
    assert character_of(ctx.block_rep("y"), ctx.classes) == T.row(4)
