"""Automorphisms and isomorphisms of finite magmas given by Cayley tables.

The engine works from the multiplication table alone. It does not
assume associativity or any other property of the operation.

Search is individualise-and-refine: both tables carry a colouring of
their elements; colours are refined until stable by a Weisfeiler-Leman
style pass over the binary operation (the colour of ``x``, ``i*x`` and
``x*i`` for every ``x``, plus equality flags). Branching fixes one
element of the smallest non-singleton cell, and every leaf is checked
against the full table.

Counting does not walk every leaf. It builds a stabiliser chain: the
order is the product of the orbit lengths of successive base points, and
automorphisms found along the way prune the orbit computations.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .. import _kernels_py, kernels
from .table import HARD_CAP, CayleyTable, check_cap

# colours stay below 2**10 because tables are capped at HARD_CAP elements
_HASH_BITS = 54
assert HARD_CAP < 2 ** (64 - _HASH_BITS)


def _as_array(t) -> np.ndarray:
    if isinstance(t, CayleyTable):
        return t.table
    return np.ascontiguousarray(t, dtype=np.int32)


def _signatures(t: np.ndarray, colors: np.ndarray, ncolors: int) -> np.ndarray:
    """One uint64 key per element; elements with different keys can never be swapped.

    The old colour occupies the top bits so the new colouring always refines
    it. The rest is a hash, and a collision only coarsens the colouring.
    """
    m = t.shape[0]
    rows = kernels.row_hashes(t, colors, ncolors)
    diag = t[np.arange(m), np.arange(m)]
    local = colors[diag].astype(np.uint64) * np.uint64(2) + (diag == np.arange(m)).astype(np.uint64)
    with np.errstate(over="ignore"):
        h = _kernels_py.mix64(_kernels_py.mix64(local) ^ rows)
    return (colors.astype(np.uint64) << np.uint64(_HASH_BITS)) | (h >> np.uint64(64 - _HASH_BITS))


def _relabel(keys: np.ndarray) -> np.ndarray:
    _, inv = np.unique(keys, return_inverse=True)
    return inv.reshape(-1).astype(np.int64)


class _Engine:
    """Joint refinement over a source table and a target table."""

    def __init__(self, source, target=None):
        self.t1 = _as_array(source)
        self.t2 = self.t1 if target is None else _as_array(target)
        self.same = target is None
        self.m = self.t1.shape[0]
        check_cap(self.m)
        self.nodes = 0

    def refine(self, c1: np.ndarray, c2: np.ndarray):
        """Stable joint refinement, or None when the colourings cannot match."""
        m = self.m
        ncolors = int(max(c1.max(), c2.max())) + 1 if m else 0
        while True:
            if self.same and c1 is c2:
                new1 = _relabel(_signatures(self.t1, c1, ncolors))
                new2 = new1
            else:
                joint = _relabel(np.concatenate(
                    [_signatures(self.t1, c1, ncolors), _signatures(self.t2, c2, ncolors)]
                ))
                new1, new2 = joint[:m], joint[m:]
            count = int(max(new1.max(), new2.max())) + 1
            if not np.array_equal(
                np.bincount(new1, minlength=count), np.bincount(new2, minlength=count)
            ):
                return None
            if count == ncolors:
                return new1, new2
            c1, c2, ncolors = new1, new2, count

    def initial(self):
        zero = np.zeros(self.m, dtype=np.int64)
        return self.refine(zero, zero if self.same else zero.copy())

    def individualize(self, c1, c2, x: int, y: int):
        ncolors = int(max(c1.max(), c2.max())) + 1
        d1 = c1.copy()
        d2 = d1 if (self.same and c1 is c2 and x == y) else c2.copy()
        d1[x] = ncolors
        d2[y] = ncolors
        return self.refine(d1, d2)

    @staticmethod
    def target_cell(c: np.ndarray) -> np.ndarray | None:
        counts = np.bincount(c)
        nontrivial = np.flatnonzero(counts > 1)
        if not len(nontrivial):
            return None
        color = nontrivial[np.argmin(counts[nontrivial])]
        return np.flatnonzero(c == color)

    def leaves(self, c1, c2, known=None, targets=()) -> Iterator[np.ndarray]:
        """Every morphism extending the matched colourings, in deterministic order.

        ``known`` is a list of automorphisms of the target table. When given,
        a branch is skipped if a known automorphism fixing the target points
        chosen so far carries an already explored branch onto it, so only
        the existence of a leaf is preserved, not the full set.
        """
        self.nodes += 1
        cell = self.target_cell(c1)
        if cell is None:
            perm = np.argsort(c2)[c1]
            if kernels.check_morphism(self.t1, self.t2, perm):
                yield perm
            return
        x = int(cell[0])
        candidates = np.flatnonzero(c2 == c1[x]).tolist()
        stabilizer = _pointwise_stabilizer(known, targets) if known else []
        explored: set[int] = set()
        for y in candidates:
            if y in explored:
                continue
            child = self.individualize(c1, c2, x, y)
            if child is not None:
                yield from self.leaves(*child, known=known, targets=targets + (y,))
            explored |= _orbit(y, stabilizer)


def _pointwise_stabilizer(gens: list[np.ndarray], points: tuple[int, ...]) -> list[np.ndarray]:
    if not points:
        return list(gens)
    stacked = np.stack(gens)
    pts = np.array(points)
    keep = (stacked[:, pts] == pts).all(axis=1)
    return [gens[i] for i in np.flatnonzero(keep)]


def invariant_partition(t) -> list[list[int]]:
    """Blocks of the stable colouring; automorphisms map each block to itself."""
    eng = _Engine(t)
    c, _ = eng.initial()
    blocks: dict[int, list[int]] = {}
    for i, color in enumerate(c.tolist()):
        blocks.setdefault(color, []).append(i)
    return sorted(blocks.values())


def magma_automorphisms(t, limit: int | None = None) -> Iterator[tuple[int, ...]]:
    """Yield each automorphism ``p`` as a tuple with ``p[i]`` the image of ``i``."""
    eng = _Engine(t)
    start = eng.initial()
    emitted = 0
    for perm in eng.leaves(*start):
        if limit is not None and emitted >= limit:
            return
        emitted += 1
        yield tuple(int(v) for v in perm)


def magma_isomorphic(t1, t2) -> tuple[int, ...] | None:
    """A bijection ``p`` with ``p[t1[i, j]] == t2[p[i], p[j]]``, or None."""
    a, b = _as_array(t1), _as_array(t2)
    if a.shape != b.shape:
        return None
    eng = _Engine(a, b)
    zero = np.zeros(eng.m, dtype=np.int64)
    start = eng.refine(zero, zero.copy())
    if start is None:
        return None
    perm = next(eng.leaves(*start), None)
    return None if perm is None else tuple(int(v) for v in perm)


@dataclass
class GroupData:
    order: int
    base: list[int]
    orbit_sizes: list[int]
    generators: list[tuple[int, ...]]


def _orbit(point: int, gens: list[np.ndarray]) -> set[int]:
    seen = {point}
    frontier = [point]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = int(g[p])
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
    return seen


def automorphism_group(t) -> GroupData:
    """Order, base and generators of the automorphism group of a magma."""
    eng = _Engine(t)
    gens: list[np.ndarray] = []
    base: list[int] = []
    orbit_sizes: list[int] = []

    def level(c) -> int:
        cell = eng.target_cell(c)
        if cell is None:
            return 1
        b = int(cell[0])
        fixed, _ = eng.individualize(c, c, b, b)
        base.append(b)
        slot = len(orbit_sizes)
        orbit_sizes.append(0)
        below = level(fixed)
        # generators collected so far all fix the current base prefix
        orbit = _orbit(b, gens)
        for y in cell.tolist():
            if y in orbit:
                continue
            child = eng.individualize(c, c, b, y)
            if child is None:
                continue
            perm = next(eng.leaves(*child, known=gens, targets=tuple(base[:slot]) + (y,)), None)
            if perm is not None:
                gens.append(perm)
                orbit = _orbit(b, gens)
        orbit_sizes[slot] = len(orbit)
        return len(orbit) * below

    start, _ = eng.initial()
    order = level(start)
    return GroupData(order, base, orbit_sizes, [tuple(int(v) for v in g) for g in gens])


def count_automorphisms(t) -> int:
    return automorphism_group(t).order
