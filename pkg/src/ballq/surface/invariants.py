"""G21-invariant counts in the polynomial ring and modulo the relations.

The counts attached to the quotient surfaces are dimensions of invariants
of the coordinate rings, i.e. polynomial invariants modulo invariant
relations.  Over Q(i) taking invariants is exact, so
dim (S/I)^H = rank [I ; S^H] - rank I, computed here mod p.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as cartesian

import numpy as np

from ..algebra.modp import exact_rows_mod_p, rank_mod_p
from ..algebra.poly import monomials_of_degree
from ..algebra.primefield import DEFAULT_PRIME
from ..grouprep.characters import add, decompose, product
from ..grouprep.induced import invariant_dimension, invariant_subspace, isotypic_projector, isotypic_rank
from ..hilbert.macaulay import macaulay_matrix
from .context import XY, Z, GroupContext, default_context
from .relations import RelationSpan


def _modp(rows, p: int) -> np.ndarray:
    return exact_rows_mod_p(rows, p)


def quotient_count(invariants: np.ndarray, relations: np.ndarray, p: int = DEFAULT_PRIME) -> int:
    """rank [relations; invariants] - rank relations, over F_p."""
    r0 = rank_mod_p(relations, p) if relations.size else 0
    both = np.vstack([relations, invariants]) if relations.size else invariants
    return rank_mod_p(both, p) - r0


def sub_character_fixed_dims(mult, dims, fixed, target: int) -> set:
    """Possible G21-invariant counts of sub-modules of dimension ``target``."""
    out = set()
    for sub in cartesian(*(range(m + 1) for m in mult)):
        if sum(s * d for s, d in zip(sub, dims)) == target:
            out.add(sum(s * f for s, f in zip(sub, fixed)))
    return out


@dataclass
class InvariantCounts:
    polynomial: dict = field(default_factory=dict)  # key -> dim of invariants in the polynomial ring
    quotient: dict = field(default_factory=dict)  # key -> dim modulo the relations
    notes: dict = field(default_factory=dict)


def xy_invariant_counts(span: RelationSpan, degrees=(1, 2, 3), ctx: GroupContext | None = None,
                        p: int = DEFAULT_PRIME) -> InvariantCounts:
    """G21 invariants on the 13 coordinates, in S and in S/I (I generated by ``span``)."""
    ctx = ctx or default_context()
    H = ctx.G21_xy
    out = InvariantCounts()
    gens = span.polynomials()
    for d in degrees:
        inv = invariant_subspace(H, d)
        out.polynomial[d] = len(inv)
        if d < span.degree:
            out.quotient[d] = len(inv)
            continue
        rel = macaulay_matrix(gens, d).dense_mod_p(p)
        out.quotient[d] = quotient_count(_modp(inv, p), rel, p)
    return out


def z_relation_rows(ctx: GroupContext | None = None, components=(1, 10)) -> list:
    """Exact basis of the chosen isotypic components of degree-2 forms in z."""
    ctx = ctx or default_context()
    rows = []
    for k in components:
        chi = ctx.table.row(k)
        target = isotypic_rank(ctx.G, ctx.classes, chi, 2, Z)
        rows.extend(isotypic_projector(ctx.G, ctx.classes, chi, 2, Z).image_basis(target))
    return rows


def xyz_quadric_counts(span: RelationSpan, ctx: GroupContext | None = None, p: int = DEFAULT_PRIME
                       ) -> InvariantCounts:
    """G21-invariant quadrics in 27 variables split by the number of z's.

    0 z: modulo the 35 relations.  2 z: modulo the chi1+chi10 relations.
    1 z: the relations there are only known to span 105 dimensions inside
    (chi2+chi4)chi6; every such sub-module has the same number of G21
    invariants, which fixes the count.
    """
    ctx = ctx or default_context()
    out = InvariantCounts()
    # polynomial ring
    inv27 = invariant_subspace(ctx.G21, 2)
    mons = monomials_of_degree(len(XY) + len(Z), 2)
    zcount = np.array([sum(m[len(XY):]) for m in mons])
    M = _modp(inv27, p)
    for c in (0, 1, 2):
        out.polynomial[c] = rank_mod_p(M[:, zcount == c], p)
    out.polynomial["total"] = len(inv27)
    # no z
    inv0 = invariant_subspace(ctx.G21_xy, 2)
    rel0 = macaulay_matrix(span.polynomials(), 2).dense_mod_p(p)
    out.quotient[0] = quotient_count(_modp(inv0, p), rel0, p)
    # two z
    inv2 = invariant_subspace(ctx.G21, 2, Z)
    rel2 = z_relation_rows(ctx)
    out.quotient[2] = quotient_count(_modp(inv2, p), _modp(rel2, p), p)
    out.notes["z_relations"] = len(rel2)
    # one z
    chi = product(add(ctx.table.row(2), ctx.table.row(4)), ctx.table.row(6))
    mult = decompose(chi, ctx.table)
    n_rel = 13 * 14 - 77
    fixed_total = ctx.fixed_dim(mult)
    options = sub_character_fixed_dims(mult, ctx.table.degrees, ctx.g21_fixed_dims, n_rel)
    out.notes["one_z_module"] = mult
    out.notes["one_z_relation_invariants"] = sorted(options)
    out.quotient[1] = fixed_total - options.pop() if len(options) == 1 else None
    out.quotient["total"] = (None if out.quotient[1] is None
                             else out.quotient[0] + out.quotient[1] + out.quotient[2])
    return out


def cubic_invariant_dimension(prefix: str, ctx: GroupContext | None = None) -> int:
    """dim of G-invariant cubics in the x, y or z block."""
    ctx = ctx or default_context()
    names = [v for v in ctx.G.rep.frame.names if v.startswith(prefix)]
    return invariant_dimension(ctx.G, 3, names)
