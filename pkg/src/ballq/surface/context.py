"""Shared, lazily built group data: closures of G and G21 and the labelled classes of G."""

from __future__ import annotations

from functools import cached_property
from pathlib import Path

from ..grouprep.characters import decompose
from ..grouprep.chartable import CharacterTable, u33_table
from ..grouprep.classes import ConjugacyClassData, character_of, conjugacy_classes, label_classes
from ..grouprep.closure import FiniteGroupClosure, cached_closure
from ..grouprep.numberfield import QI7
from .dataset import SurfaceDataset, load_dataset

XY = tuple(f"x{k}" for k in range(1, 7)) + tuple(f"y{k}" for k in range(1, 8))
X = XY[:6]
Y = XY[6:]
Z = tuple(f"z{k}" for k in range(1, 15))


class GroupContext:
    """Closures and classes computed once per process (and optionally cached on disk)."""

    def __init__(self, dataset: SurfaceDataset | None = None, cache_dir: Path | str | None = None):
        self.data = dataset or load_dataset()
        self.cache_dir = cache_dir

    @cached_property
    def table(self) -> CharacterTable:
        return u33_table()

    @cached_property
    def G(self) -> FiniteGroupClosure:
        """G acting on all 27 variables."""
        return cached_closure(self.data.g_full(), self.cache_dir)

    @cached_property
    def classes(self) -> ConjugacyClassData:
        """Classes of G in table column order; the y-block anchors the labelling to chi4."""
        raw = conjugacy_classes(self.G)
        return label_classes(raw, self.table, [(self.block_rep("y"), 4)])

    def block_rep(self, prefix: str):
        rep = self.data.g_full()
        return rep.restrict([v for v in rep.frame.names if v.startswith(prefix)], f"G on {prefix}")

    def block_character(self, prefix: str) -> tuple:
        return character_of(self.block_rep(prefix), self.classes)

    @cached_property
    def G21(self) -> FiniteGroupClosure:
        """G21 on all 27 variables (consistent z-generator)."""
        return cached_closure(self.data.g21_full(), self.cache_dir)

    @cached_property
    def G21_xy(self) -> FiniteGroupClosure:
        return cached_closure(self.data.g21_xy, self.cache_dir)

    @cached_property
    def g21_classes(self) -> list:
        """Class of G (column index) for every element of G21."""
        G, H = self.G, self.G21
        return [self.classes.class_of(G.locate(e)) for e in H.elements]

    @cached_property
    def g21_fixed_dims(self) -> tuple:
        """dim of the G21-fixed space in each irreducible of G."""
        cls = self.g21_classes
        out = []
        for row in self.table.values:
            s = sum((row[c] for c in cls), QI7(0)) / len(cls)
            if not s.is_rational_integer():
                raise ArithmeticError(f"G21 average {s} is not an integer")
            out.append(int(s.a))
        return tuple(out)

    def fixed_dim(self, mult) -> int:
        """G21 invariants in the G-module with multiplicity vector ``mult``."""
        return sum(m * f for m, f in zip(mult, self.g21_fixed_dims))

    def decompose(self, chi) -> tuple:
        return decompose(chi, self.table)


_DEFAULT: GroupContext | None = None


def default_context() -> GroupContext:
    global _DEFAULT
    if _DEFAULT is None:
        _DEFAULT = GroupContext()
    return _DEFAULT
