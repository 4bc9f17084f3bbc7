"""Conjugacy classes, power maps, class labelling and characters of matrix groups."""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from ..algebra.gaussian import GaussianRational
from ..errors import NoMatchingIrreducible
from .chartable import CharacterTable
from .closure import FiniteGroupClosure
from .matrices import (MatrixRepresentation, exact_matmul, gi_identity, gi_matmul, gi_matmul_batch,
                       gi_trace)
from .numberfield import QI7


@dataclass
class ConjugacyClassData:
    """Classes of a closed group.

    ``members[c]`` lists element ids; ``representatives[c]`` is the smallest
    id in the class.  ``power_maps[k][c]`` is the class of g**k for g in c.
    After :func:`label_classes` the classes are ordered like the table
    columns and ``labels`` carries the column names.
    """

    group: FiniteGroupClosure = field(repr=False)
    members: list
    representatives: list
    sizes: tuple
    orders: tuple
    power_maps: dict
    labels: tuple = ()
    ambiguous: tuple = ()  # groups of labels whose order is a convention

    @property
    def n_classes(self) -> int:
        return len(self.members)

    def class_of(self, element: int) -> int:
        return int(self._lookup[element])

    def __post_init__(self):
        lookup = np.empty(self.group.order, dtype=np.int64)
        for c, mem in enumerate(self.members):
            lookup[mem] = c
        self._lookup = lookup

    def power_map(self, k: int) -> tuple:
        if k not in self.power_maps:
            G = self.group
            self.power_maps[k] = tuple(self.class_of(G.power(r, k)) for r in self.representatives)
        return self.power_maps[k]

    def reordered(self, perm, labels=(), ambiguous=()) -> "ConjugacyClassData":
        """Classes in the order ``perm`` (new class i = old class perm[i])."""
        inv = {old: new for new, old in enumerate(perm)}
        pm = {k: tuple(inv[v[old]] for old in perm) for k, v in self.power_maps.items()}
        return replace(self, members=[self.members[i] for i in perm],
                       representatives=[self.representatives[i] for i in perm],
                       sizes=tuple(self.sizes[i] for i in perm), orders=tuple(self.orders[i] for i in perm),
                       power_maps=pm, labels=tuple(labels), ambiguous=tuple(ambiguous))


def _conjugation_permutations(G: FiniteGroupClosure) -> list:
    """For each generator s, the permutation g -> s^-1 g s of element ids."""
    E = G.elements
    perms = []
    for gid in G.generator_ids:
        s = E[gid]
        s_inv = E[G.inverse(gid)]
        conj = gi_matmul_batch(gi_matmul_batch(s_inv, E), s)
        perms.append(np.array([G.locate(c) for c in conj], dtype=np.int64))
    return perms


def conjugacy_classes(G: FiniteGroupClosure) -> ConjugacyClassData:
    """Classes as orbits of conjugation by the generators; power maps for k = 2, 3."""
    n = G.order
    perms = _conjugation_permutations(G)
    seen = np.full(n, -1, dtype=np.int64)
    members = []
    for start in range(n):
        if seen[start] >= 0:
            continue
        c = len(members)
        seen[start] = c
        orbit = [start]
        head = 0
        while head < len(orbit):
            g = orbit[head]
            head += 1
            for p in perms:
                h = int(p[g])
                if seen[h] < 0:
                    seen[h] = c
                    orbit.append(h)
        members.append(sorted(orbit))
    reps = [m[0] for m in members]
    data = ConjugacyClassData(G, members, reps, tuple(len(m) for m in members),
                              tuple(G.element_order(r) for r in reps), {})
    data.power_map(2)
    data.power_map(3)
    return data


def _element_in(rep: MatrixRepresentation, G: FiniteGroupClosure, k: int):
    if rep is G.rep or (rep.frame == G.rep.frame and rep.generators == G.rep.generators):
        return G.elements[k], True
    if len(rep.generators) != len(G.rep.generators):
        raise ValueError("representation must use the closure's generator list")
    if rep.integral:
        return G.evaluate(k, rep.gi_generators(), gi_matmul, gi_identity(rep.dim)), True
    ident = [[GaussianRational(int(i == j)) for j in range(rep.dim)] for i in range(rep.dim)]
    return G.evaluate(k, rep.generators, exact_matmul, ident), False


def character_of(rep: MatrixRepresentation, classes: ConjugacyClassData) -> tuple:
    """Trace of ``rep`` at each class representative, as exact QI7 values.

    ``rep`` must be given on the same generator list as the closure, so that
    class representatives can be rebuilt from their BFS words.
    """
    G = classes.group
    out = []
    for r in classes.representatives:
        M, gi = _element_in(rep, G, r)
        t = gi_trace(M) if gi else sum((M[i][i] for i in range(rep.dim)), GaussianRational(0))
        out.append(QI7.coerce(t))
    return tuple(out)


def identify(chi, table: CharacterTable) -> int:
    """1-based index of the table row equal to ``chi``."""
    chi = tuple(QI7.coerce(v) for v in chi)
    for k, row in enumerate(table.values, start=1):
        if row == chi:
            return k
    raise NoMatchingIrreducible(f"character {[str(v) for v in chi]} matches no table row")


def label_classes(classes: ConjugacyClassData, table: CharacterTable, anchors=()) -> ConjugacyClassData:
    """Match computed classes to table columns.

    Candidates must agree in element order and class size.  Each anchor is a
    pair (rep, k) requiring ``character_of(rep)`` to equal row k.  Columns
    that remain interchangeable after that (Galois-conjugate pairs) are
    assigned in discovery order and reported in ``ambiguous``.
    """
    if classes.n_classes != table.n_classes:
        raise NoMatchingIrreducible(f"{classes.n_classes} classes against {table.n_classes} columns")
    anchor_vals = [(character_of(rep, classes), table.row(k)) for rep, k in anchors]
    t_orders, t_sizes = table.element_orders(), table.class_sizes()
    cands = []
    for c in range(classes.n_classes):
        ok = []
        for col in range(table.n_classes):
            if (classes.orders[c], classes.sizes[c]) != (t_orders[col], t_sizes[col]):
                continue
            if all(chi[c] == row[col] for chi, row in anchor_vals):
                ok.append(col)
        if not ok:
            raise NoMatchingIrreducible(f"class {c} (order {classes.orders[c]}) fits no column")
        cands.append(ok)
    # group classes with identical candidate sets and assign in order
    assignment = [None] * classes.n_classes
    ambiguous = []
    for key in sorted({tuple(v) for v in cands}):
        cls = [c for c in range(classes.n_classes) if tuple(cands[c]) == key]
        if len(cls) != len(key):
            raise NoMatchingIrreducible(f"columns {[table.labels[k] for k in key]} cannot be matched")
        for c, col in zip(cls, key):
            assignment[c] = col
        if len(key) > 1:
            ambiguous.append(tuple(table.labels[k] for k in key))
    if sorted(assignment) != list(range(table.n_classes)):
        raise NoMatchingIrreducible("class matching is not a bijection")
    perm = [assignment.index(col) for col in range(table.n_classes)]
    return classes.reordered(perm, table.labels, ambiguous)
