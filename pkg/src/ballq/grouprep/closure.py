"""Breadth-first closure of a finite matrix group.

Elements are hashed by their exact canonical bytes (Gaussian-integer int64
arrays).  Generators with non-integral entries fall back to an exact object
path keyed by the canonical Q(i) entries.
"""

from __future__ import annotations

import hashlib
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ..errors import LimitExceeded
from .matrices import (MatrixRepresentation, check_range, exact_matmul, from_gi, gi_identity,
                       gi_key, gi_matmul, to_gi)

log = logging.getLogger(__name__)

DEFAULT_LIMIT = 100_000


@dataclass
class FiniteGroupClosure:
    """All elements of the group generated by a representation.

    ``elements`` is an int64 array of shape (N, 2, n, n) holding real and
    imaginary parts; element 0 is the identity.
    """

    rep: MatrixRepresentation
    elements: np.ndarray
    index: dict = field(repr=False)
    generator_ids: list = field(default_factory=list)
    parent: np.ndarray | None = field(default=None, repr=False)  # BFS tree: element k = parent[k] * gen[via[k]]
    via: np.ndarray | None = field(default=None, repr=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return self.order

    def __getitem__(self, k) -> np.ndarray:
        return self.elements[k]

    def locate(self, A: np.ndarray) -> int:
        return self.index[gi_key(A)]

    def contains(self, A: np.ndarray) -> bool:
        return gi_key(A) in self.index

    def multiply(self, a: int, b: int) -> int:
        return self.locate(gi_matmul(self.elements[a], self.elements[b]))

    def power(self, a: int, k: int) -> int:
        result = gi_identity(self.rep.dim)
        base = self.elements[a]
        while k:
            if k & 1:
                result = gi_matmul(result, base)
            base = gi_matmul(base, base)
            k >>= 1
        return self.locate(result)

    def inverse(self, a: int) -> int:
        return self.power(a, self.element_order(a) - 1)

    def element_order(self, a: int) -> int:
        ident = self.elements[0]
        A = self.elements[a]
        P = A.copy()
        k = 1
        while not np.array_equal(P, ident):
            P = gi_matmul(P, A)
            k += 1
        return k

    def exact(self, k: int) -> list:
        return from_gi(self.elements[k])

    def key_set(self) -> frozenset:
        return frozenset(self.index)

    def word(self, k: int) -> list:
        """Generator indices w with element k = gen[w[0]] * gen[w[1]] * ..."""
        if self.parent is None:
            raise ValueError("closure carries no BFS words")
        out = []
        while k:
            out.append(int(self.via[k]))
            k = int(self.parent[k])
        return out[::-1]

    def evaluate(self, k: int, generators: list, mul, identity):
        """Image of element k under the homomorphism sending our generators to ``generators``."""
        out = identity
        for s in self.word(k):
            out = mul(out, generators[s])
        return out

    def content_hash(self) -> str:
        h = hashlib.sha256()
        h.update(np.ascontiguousarray(self.elements).tobytes())
        return h.hexdigest()


def closure(rep: MatrixRepresentation, limit: int = DEFAULT_LIMIT) -> FiniteGroupClosure:
    """Breadth-first product closure; element order is BFS layer, then insertion."""
    if not rep.integral:
        return _closure_exact(rep, limit)
    gens = rep.gi_generators()
    n = rep.dim
    ident = gi_identity(n)
    elements = [ident]
    index = {gi_key(ident): 0}
    parent, via = [-1], [-1]
    head = 0
    while head < len(elements):
        g = elements[head]
        for t, s in enumerate(gens):
            h = gi_matmul(g, s)
            key = gi_key(h)
            if key not in index:
                check_range(h)
                index[key] = len(elements)
                elements.append(h)
                parent.append(head)
                via.append(t)
                if len(elements) > limit:
                    raise LimitExceeded(f"closure exceeds {limit} elements")
        head += 1
    gen_ids = [index[gi_key(s)] for s in gens]
    return FiniteGroupClosure(rep, np.array(elements), index, gen_ids,
                              np.array(parent, dtype=np.int64), np.array(via, dtype=np.int64))


def _canon(M) -> tuple:
    return tuple((c.re, c.im, c.den) for row in M for c in row)


def _closure_exact(rep: MatrixRepresentation, limit: int) -> FiniteGroupClosure:
    """Slow exact path for generators with denominators.

    Elements are still stored in the int64 layout, so every product must
    turn out integral; otherwise NotImplementedError is raised.
    """
    n = rep.dim
    from ..algebra.gaussian import GaussianRational
    ident = [[GaussianRational(int(i == j)) for j in range(n)] for i in range(n)]
    elements = [ident]
    index = {_canon(ident): 0}
    parent, via = [-1], [-1]
    head = 0
    while head < len(elements):
        g = elements[head]
        for t, s in enumerate(rep.generators):
            h = exact_matmul(g, s)
            key = _canon(h)
            if key not in index:
                index[key] = len(elements)
                elements.append(h)
                parent.append(head)
                via.append(t)
                if len(elements) > limit:
                    raise LimitExceeded(f"closure exceeds {limit} elements")
        head += 1
    try:
        arr = np.array([to_gi(e) for e in elements])
    except ValueError as exc:
        raise NotImplementedError("closure has non-integral elements; no int64 layout") from exc
    gi_index = {gi_key(a): k for k, a in enumerate(arr)}
    return FiniteGroupClosure(rep, arr, gi_index, [gi_index[gi_key(to_gi(s))] for s in rep.generators],
                              np.array(parent, dtype=np.int64), np.array(via, dtype=np.int64))


def _rep_fingerprint(rep: MatrixRepresentation) -> str:
    h = hashlib.sha256()
    h.update(json.dumps(list(rep.frame.names)).encode())
    for g in rep.generators:
        h.update(json.dumps(_canon(g)).encode())
    return h.hexdigest()[:20]


CACHE_VERSION = "2"


def cached_closure(rep: MatrixRepresentation, cache_dir: Path | str | None = None,
                   limit: int = DEFAULT_LIMIT) -> FiniteGroupClosure:
    """:func:`closure` with an on-disk cache keyed by the generators' exact bytes.

    The cache stores all elements plus a SHA-256 of their bytes; a file whose
    hash does not match is ignored and rebuilt.
    """
    if cache_dir is None:
        return closure(rep, limit)
    cache_dir = Path(cache_dir)
    path = cache_dir / f"closure-v{CACHE_VERSION}-{_rep_fingerprint(rep)}.npz"
    if path.exists():
        try:
            with np.load(path) as data:
                elements = data["elements"]
                stored = str(data["sha256"])
                gen_ids = [int(k) for k in data["generator_ids"]]
                parent, via = data["parent"], data["via"]
            if hashlib.sha256(np.ascontiguousarray(elements).tobytes()).hexdigest() == stored:
                index = {gi_key(e): k for k, e in enumerate(elements)}
                return FiniteGroupClosure(rep, elements, index, gen_ids, parent, via)
            log.info("closure cache %s failed its hash check; rebuilding", path)
        except (OSError, KeyError, ValueError):
            log.info("unreadable closure cache %s; rebuilding", path)
    G = closure(rep, limit)
    cache_dir.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(".tmp.npz")
    np.savez_compressed(tmp, elements=G.elements, sha256=G.content_hash(),
                        generator_ids=np.array(G.generator_ids), parent=G.parent, via=G.via)
    tmp.replace(path)
    return G
