"""The character table of U3(3), embedded as exact data.

Class sizes are not part of the printed table; they are recovered from
column orthogonality (the centralizer order of a class is the sum of
``|chi(g)|^2`` over the irreducibles).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .numberfield import QI7

GROUP_ORDER = 6048

CLASS_LABELS = ("1a", "7a", "7b", "2a", "3a", "4a", "4b", "6a", "12a", "12b", "8a", "8b", "4c", "3b")

_A = QI7(Fraction(1, 2), 0, 0, Fraction(-1, 2))  # (1 - i sqrt7)/2
_B = QI7(-1, -2)
_C = QI7(-3, -2)
_D = QI7(0, -4)
_E = QI7(-1, -1)
_F = QI7(0, -1)


def _bar(x):
    return x.conjugate()


A, Ab, B, Bb, C, Cb, D, Db, E, Eb, F, Fb = (_A, _bar(_A), _B, _bar(_B), _C, _bar(_C),
                                           _D, _bar(_D), _E, _bar(_E), _F, _bar(_F))

_ROWS = [
    [1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1],
    [6, -1, -1, -2, -3, -2, -2, 1, 1, 1, 0, 0, 2, 0],
    [7, 0, 0, -1, -2, 3, 3, 2, 0, 0, -1, -1, -1, 1],
    [7, 0, 0, 3, -2, B, Bb, 0, E, Eb, F, Fb, 1, 1],
    [7, 0, 0, 3, -2, Bb, B, 0, Eb, E, Fb, F, 1, 1],
    [14, 0, 0, -2, 5, 2, 2, 1, -1, -1, 0, 0, 2, -1],
    [21, 0, 0, 5, 3, 1, 1, -1, 1, 1, -1, -1, 1, 0],
    [21, 0, 0, 1, 3, C, Cb, 1, F, Fb, Fb, F, -1, 0],
    [21, 0, 0, 1, 3, Cb, C, 1, Fb, F, F, Fb, -1, 0],
    [27, -1, -1, 3, 0, 3, 3, 0, 0, 0, 1, 1, -1, 0],
    [28, 0, 0, -4, 1, D, Db, -1, Fb, F, 0, 0, 0, 1],
    [28, 0, 0, -4, 1, Db, D, -1, F, Fb, 0, 0, 0, 1],
    [32, A, Ab, 0, -4, 0, 0, 0, 0, 0, 0, 0, 0, -1],
    [32, Ab, A, 0, -4, 0, 0, 0, 0, 0, 0, 0, 0, -1],
]


@dataclass(frozen=True)
class CharacterTable:
    labels: tuple
    values: tuple  # values[k][c] = chi_{k+1} at class c, as QI7
    group_order: int

    @property
    def degrees(self) -> tuple:
        return tuple(int(row[0].a) for row in self.values)

    @property
    def n_classes(self) -> int:
        return len(self.labels)

    def row(self, k: int) -> tuple:
        """Character chi_k, 1-based as in the literature."""
        return self.values[k - 1]

    def centralizer_orders(self) -> tuple:
        out = []
        for c in range(self.n_classes):
            s = QI7(0)
            for row in self.values:
                s = s + row[c] * row[c].conjugate()
            if not s.is_rational_integer():
                raise ValueError(f"column {self.labels[c]} has non-integral norm {s}")
            out.append(int(s.a))
        return tuple(out)

    def class_sizes(self) -> tuple:
        sizes = []
        for z in self.centralizer_orders():
            if self.group_order % z:
                raise ValueError("centralizer order does not divide the group order")
            sizes.append(self.group_order // z)
        return tuple(sizes)

    def element_orders(self) -> tuple:
        return tuple(int("".join(ch for ch in lab if ch.isdigit())) for lab in self.labels)

    def inner(self, chi, psi, sizes=None) -> QI7:
        """Class-weighted Hermitian inner product <chi, psi>."""
        sizes = sizes or self.class_sizes()
        s = QI7(0)
        for n, a, b in zip(sizes, chi, psi):
            s = s + QI7.coerce(a) * QI7.coerce(b).conjugate() * n
        return s / self.group_order

    def _scaled(self) -> list:
        """Entries times 2 as integer 4-tuples; every table entry has denominator dividing 2."""
        out = []
        for row in self.values:
            r = []
            for v in row:
                q = QI7.coerce(v)
                t = tuple(2 * x for x in (q.a, q.b, q.c, q.d))
                if any(x.denominator != 1 for x in t):
                    raise ValueError("table entry outside (1/2) Z[i, sqrt 7]")
                r.append(tuple(int(x) for x in t))
            out.append(r)
        return out

    def row_gram(self) -> list:
        sizes = self.class_sizes()
        S = self._scaled()
        out = []
        for a in S:
            row = []
            for b in S:
                acc = (0, 0, 0, 0)
                for n, x, y in zip(sizes, a, b):
                    acc = _add4(acc, _mul4(x, _conj4(y)), n)
                row.append(QI7(*acc) / (4 * self.group_order))
            out.append(row)
        return out

    def column_gram(self) -> list:
        S = self._scaled()
        n = self.n_classes
        out = []
        for c1 in range(n):
            row = []
            for c2 in range(n):
                acc = (0, 0, 0, 0)
                for chi in S:
                    acc = _add4(acc, _mul4(chi[c1], _conj4(chi[c2])), 1)
                row.append(QI7(*acc) / 4)
            out.append(row)
        return out


def u33_table() -> CharacterTable:
    values = tuple(tuple(QI7.coerce(v) for v in row) for row in _ROWS)
    return CharacterTable(CLASS_LABELS, values, GROUP_ORDER)


def _mul4(x, y):
    """Product in Z[i, s] on (1, i, s, i s) coordinates, s^2 = 7."""
    a, b, c, d = x
    e, f, g, h = y
    return (a * e - b * f + 7 * (c * g - d * h),
            a * f + b * e + 7 * (c * h + d * g),
            a * g + c * e - b * h - d * f,
            a * h + d * e + b * g + c * f)


def _conj4(x):
    # complex conjugation: i -> -i, s fixed
    return (x[0], -x[1], x[2], -x[3])


def _add4(acc, x, n):
    return tuple(u + n * v for u, v in zip(acc, x))
