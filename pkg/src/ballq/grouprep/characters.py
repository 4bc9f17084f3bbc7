"""Arithmetic on class functions: products, symmetric powers, decomposition."""

from __future__ import annotations

from typing import Sequence

from ..errors import MissingPowerMap, NonIntegralMultiplicity
from .chartable import CharacterTable
from .numberfield import QI7


def _vec(chi) -> tuple:
    return tuple(QI7.coerce(v) for v in chi)


def add(*chis) -> tuple:
    out = _vec(chis[0])
    for chi in chis[1:]:
        out = tuple(a + b for a, b in zip(out, _vec(chi)))
    return out


def product(chi, psi) -> tuple:
    return tuple(a * b for a, b in zip(_vec(chi), _vec(psi)))


def _powered(chi, pmap) -> tuple:
    return tuple(chi[pmap[c]] for c in range(len(chi)))


def sym_power_character(chi, n: int, power_maps) -> tuple:
    """Character of Sym^n for n in {2, 3}.

    ``power_maps`` is a ConjugacyClassData or a mapping k -> tuple giving the
    class of g**k.
    """
    chi = _vec(chi)
    pm = getattr(power_maps, "power_maps", power_maps)
    needed = {2: (2,), 3: (2, 3)}
    if n not in needed:
        raise ValueError("symmetric powers are implemented for n = 2, 3")
    for k in needed[n]:
        if k not in pm:
            raise MissingPowerMap(f"power map for k = {k} not available")
    c2 = _powered(chi, pm[2])
    if n == 2:
        return tuple((a * a + b) / 2 for a, b in zip(chi, c2))
    c3 = _powered(chi, pm[3])
    return tuple((a * a * a + 3 * a * b + 2 * c) / 6 for a, b, c in zip(chi, c2, c3))


def decompose(chi, table: CharacterTable) -> tuple:
    """Multiplicities of the irreducibles in ``chi`` (table column order)."""
    chi = _vec(chi)
    sizes = table.class_sizes()
    out = []
    for k, row in enumerate(table.values, start=1):
        m = table.inner(chi, row, sizes)
        if not m.is_rational_integer():
            raise NonIntegralMultiplicity(f"<chi, chi_{k}> = {m}")
        out.append(int(m.a))
    return tuple(out)


def from_multiplicities(mult: Sequence[int], table: CharacterTable) -> tuple:
    out = tuple(QI7(0) for _ in table.labels)
    for m, row in zip(mult, table.values):
        if m:
            out = tuple(a + m * b for a, b in zip(out, row))
    return out


def format_decomposition(mult: Sequence[int]) -> str:
    parts = []
    for k, m in enumerate(mult, start=1):
        if m:
            parts.append(f"chi{k}" if m == 1 else f"{m}*chi{k}")
    return " + ".join(parts) if parts else "0"


def multiplicity_vector(indices: Sequence[int], n: int = 14) -> tuple:
    """Multiplicity vector from a list of 1-based row indices (repeats allowed)."""
    out = [0] * n
    for k in indices:
        out[k - 1] += 1
    return tuple(out)

