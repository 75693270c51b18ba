"""Automorphisms of (IS_n, *).

An automorphism is stored as an image array over canonical element
indices. Composition is left to right like element composition:
``compose_aut(f, g)`` applies ``f`` first, and ``sigma = tau * pi`` means
``sigma(a) == pi(tau(a))``.

For k >= 1 every automorphism factors uniquely as tau_(g, h1, h2) followed
by a permutation of elements inside congruence classes. For k = 0 the
product is identically zero, the group is the full symmetric group on the
nonzero elements, and the semidirect-product count overstates it.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from . import core, kernels
from .congruence import CongruenceClass, classes
from .core import PartialInjection, make
from .errors import CrossClassMove, DegenerateContext, NotAutomorphism
from .oracle.table import CayleyTable, cayley
from .sandwich import SandwichContext


@dataclass(frozen=True)
class Automorphism:
    images: tuple[int, ...]
    verified: bool = False

    def __call__(self, index: int) -> int:
        return self.images[index]

    def to_json(self) -> dict:
        return {"images": list(self.images)}

    @classmethod
    def from_json(cls, data: dict) -> "Automorphism":
        return cls(tuple(int(v) for v in data["images"]))


@dataclass(frozen=True)
class GTriple:
    """(g, h1, h2): g permutes A = {1..k}, h1 and h2 permute {k+1..n}.

    Each component is in one-line form over actual points, so ``g[i - 1]``
    is g(i) and ``h1[j - k - 1]`` is h1(j).
    """

    g: tuple[int, ...]
    h1: tuple[int, ...]
    h2: tuple[int, ...]

    @classmethod
    def identity(cls, ctx: SandwichContext) -> "GTriple":
        a_bar = tuple(range(ctx.k + 1, ctx.n + 1))
        return cls(tuple(range(1, ctx.k + 1)), a_bar, a_bar)

    def then(self, other: "GTriple") -> "GTriple":
        """Componentwise product, applying ``self`` first."""
        k = len(self.g)

        def seq(p, q, offset):
            return tuple(q[x - offset - 1] for x in p)

        return GTriple(seq(self.g, other.g, 0), seq(self.h1, other.h1, k), seq(self.h2, other.h2, k))

    def to_json(self) -> dict:
        return {"g": list(self.g), "h1": list(self.h1), "h2": list(self.h2)}


@dataclass(frozen=True)
class ClassPerm:
    """One permutation per congruence class, over positions in its member list."""

    perms: tuple[tuple[int, ...], ...]

    @classmethod
    def identity(cls, classes_: Sequence[CongruenceClass]) -> "ClassPerm":
        return cls(tuple(tuple(range(len(c))) for c in classes_))

    def is_identity(self) -> bool:
        return all(p == tuple(range(len(p))) for p in self.perms)

    def to_json(self) -> dict:
        # identity entries are omitted; from_json fills them back in
        return {str(i): list(p) for i, p in enumerate(self.perms) if list(p) != sorted(p)}

    @classmethod
    def from_json(cls, data: dict, classes_: Sequence[CongruenceClass]) -> "ClassPerm":
        perms = [tuple(range(len(c))) for c in classes_]
        for key, p in data.items():
            perms[int(key)] = tuple(int(v) for v in p)
        return cls(tuple(perms))


@functools.lru_cache(maxsize=32)
def _table(ctx: SandwichContext) -> CayleyTable:
    return cayley(ctx)


@functools.lru_cache(maxsize=32)
def _classes(ctx: SandwichContext) -> tuple[CongruenceClass, ...]:
    return tuple(classes(ctx))


@functools.lru_cache(maxsize=32)
def _owner(ctx: SandwichContext) -> np.ndarray:
    owner = np.empty(core.universe_size(ctx.n), dtype=np.int64)
    for ci, cls in enumerate(_classes(ctx)):
        owner[list(cls.members)] = ci
    return owner


def identity_aut(ctx: SandwichContext) -> Automorphism:
    return Automorphism(tuple(range(core.universe_size(ctx.n))), verified=True)


def is_automorphism(ctx: SandwichContext, images: Sequence[int]) -> bool:
    m = core.universe_size(ctx.n)
    if len(images) != m or sorted(images) != list(range(m)):
        return False
    t = _table(ctx).table
    return kernels.check_morphism(t, t, np.asarray(images, dtype=np.int64))


def verify(ctx: SandwichContext, images: Sequence[int]) -> Automorphism:
    """Checked constructor; raises NotAutomorphism on failure."""
    if not is_automorphism(ctx, images):
        raise NotAutomorphism("the image array does not respect the sandwich product")
    return Automorphism(tuple(int(v) for v in images), verified=True)


def combined_perm(ctx: SandwichContext, g: Sequence[int], h: Sequence[int]) -> PartialInjection:
    """The permutation of N acting as g on A and as h on the complement."""
    return make(ctx.n, list(zip(range(1, ctx.n + 1), list(g) + list(h))))


def _conjugation_images(ctx: SandwichContext, left: PartialInjection, right: PartialInjection) -> np.ndarray:
    # index of left . a . right for every a, with left and right total
    n = ctx.n
    mat = core.image_matrix(n)
    right_ext = np.array((0,) + right.images, dtype=np.int64)
    cols = [right_ext[mat[:, left.images[x] - 1]] for x in range(n)]
    out = np.stack(cols, axis=1) if cols else np.zeros((len(mat), 0), dtype=np.int64)
    codes = out @ ((n + 1) ** np.arange(n, dtype=np.int64))
    return core.index_lookup(n)[codes].astype(np.int64)


def tau(ctx: SandwichContext, t: GTriple, check: bool = True) -> Automorphism:
    """a -> (g h1)^-1 a (g h2)."""
    left = core.inverse(combined_perm(ctx, t.g, t.h1))
    right = combined_perm(ctx, t.g, t.h2)
    images = _conjugation_images(ctx, left, right)
    if check:
        return verify(ctx, images)
    return Automorphism(tuple(images.tolist()))


def class_perm_from_images(ctx: SandwichContext, images: Sequence[int]) -> ClassPerm:
    """Read a ClassPerm off an image array; every element must stay in its class."""
    owner = _owner(ctx)
    perms = []
    for ci, cls in enumerate(_classes(ctx)):
        pos = {x: j for j, x in enumerate(cls.members)}
        row = []
        for x in cls.members:
            y = images[x]
            if owner[y] != ci:
                raise CrossClassMove(f"element {x} of class {ci} is sent to class {owner[y]}")
            row.append(pos[y])
        perms.append(tuple(row))
    return ClassPerm(tuple(perms))


def pi(ctx: SandwichContext, cp: ClassPerm, check: bool = True) -> Automorphism:
    cls = _classes(ctx)
    if len(cp.perms) != len(cls):
        raise ValueError(f"expected {len(cls)} class permutations, got {len(cp.perms)}")
    images = list(range(core.universe_size(ctx.n)))
    for c, p in zip(cls, cp.perms):
        if sorted(p) != list(range(len(c))):
            raise CrossClassMove(f"{p} is not a permutation of the {len(c)} members of class {c.key}")
        for j, x in enumerate(c.members):
            images[x] = c.members[p[j]]
    if check:
        return verify(ctx, images)
    return Automorphism(tuple(images))


def compose_aut(f: Automorphism, g: Automorphism) -> Automorphism:
    gi = g.images
    return Automorphism(tuple(gi[x] for x in f.images), verified=f.verified and g.verified)


def inverse_aut(f: Automorphism) -> Automorphism:
    inv = [0] * len(f.images)
    for x, y in enumerate(f.images):
        inv[y] = x
    return Automorphism(tuple(inv), verified=f.verified)


def _extract_triple(ctx: SandwichContext, images: Sequence[int]) -> GTriple:
    k, n = ctx.k, ctx.n
    elements = core.enumerate_all(n)

    def image_of(x: int, y: int) -> PartialInjection:
        return elements[images[core.index_of(make(n, [(x, y)]))]]

    g = []
    for i in range(1, k + 1):
        atom = image_of(i, i)
        if atom.rank != 1 or atom.pairs[0][0] != atom.pairs[0][1] or not ctx.in_A(atom.pairs[0][0]):
            raise NotAutomorphism(f"atom {i}>{i} is sent to {atom}, not to an atom of A")
        g.append(atom.pairs[0][0])
    h1, h2 = [], []
    for j in range(k + 1, n + 1):
        img = image_of(j, j)
        if img.rank != 1 or ctx.in_A(img.pairs[0][0]) or ctx.in_A(img.pairs[0][1]):
            raise NotAutomorphism(f"{j}>{j} is sent to {img}, outside the two-sided annihilator")
        h1.append(img.pairs[0][0])
        h2.append(img.pairs[0][1])
    if len(set(h1)) != len(h1) or len(set(h2)) != len(h2) or len(set(g)) != len(g):
        raise NotAutomorphism("the induced maps on points are not bijections")
    return GTriple(tuple(g), tuple(h1), tuple(h2))


def factorize(ctx: SandwichContext, sigma: Automorphism) -> tuple[GTriple, ClassPerm]:
    """Split sigma as tau(t) followed by pi(c)."""
    if ctx.k == 0:
        raise DegenerateContext("factorization needs k >= 1; with k = 0 the product is zero")
    if not sigma.verified:
        sigma = verify(ctx, sigma.images)
    t = _extract_triple(ctx, sigma.images)
    tau_inv = inverse_aut(tau(ctx, t, check=False))
    residue = compose_aut(tau_inv, sigma)
    try:
        cp = class_perm_from_images(ctx, residue.images)
    except CrossClassMove as exc:
        raise NotAutomorphism(f"residue after tau is not a class permutation: {exc}") from exc
    return t, cp


def factorization_to_json(t: GTriple, cp: ClassPerm) -> dict:
    return {**t.to_json(), "class_perms": cp.to_json()}


def semidirect_formula_order(ctx: SandwichContext) -> int:
    """k! ((n-k)!)^2 prod |P_i|!, evaluated even where it does not apply (k = 0)."""
    f = math.factorial
    prod = math.prod(f(len(c)) for c in _classes(ctx))
    return f(ctx.k) * f(ctx.n - ctx.k) ** 2 * prod


def is_degenerate(ctx: SandwichContext) -> bool:
    return ctx.k == 0


def aut_order(ctx: SandwichContext) -> int:
    if is_degenerate(ctx):
        return math.factorial(core.universe_size(ctx.n) - 1)
    return semidirect_formula_order(ctx)


def triples(ctx: SandwichContext) -> Iterator[GTriple]:
    """All of S(A) x S(A_bar) x S(A_bar) in lexicographic order."""
    a = range(1, ctx.k + 1)
    a_bar = range(ctx.k + 1, ctx.n + 1)
    for g in itertools.permutations(a):
        for h1 in itertools.permutations(a_bar):
            for h2 in itertools.permutations(a_bar):
                yield GTriple(g, h1, h2)


_BLOCK = 4096


def _class_perm_blocks(ctx: SandwichContext):
    """Split the moving classes into an outer loop and one vectorised inner block."""
    moving = [c for c in _classes(ctx) if len(c) > 1]
    tables = []
    for c in moving:
        members = np.array(c.members, dtype=np.int64)
        perms = np.array(list(itertools.permutations(range(len(c)))), dtype=np.int64)
        tables.append((members, members[perms]))
    split = len(tables)
    size = 1
    while split > 0 and size * len(tables[split - 1][1]) <= _BLOCK:
        split -= 1
        size *= len(tables[split][1])
    m = core.universe_size(ctx.n)
    block = np.tile(np.arange(m, dtype=np.int64), (size, 1))
    stride = size
    for members, imgs in tables[split:]:
        stride //= len(imgs)
        digit = (np.arange(size) // stride) % len(imgs)
        block[:, members] = imgs[digit]
    return tables[:split], block


def _check_generators(ctx: SandwichContext) -> None:
    # adjacent transpositions inside each class generate the whole class-permutation group
    cls = _classes(ctx)
    for ci, c in enumerate(cls):
        for j in range(len(c) - 1):
            perms = [tuple(range(len(d))) for d in cls]
            swap = list(range(len(c)))
            swap[j], swap[j + 1] = swap[j + 1], swap[j]
            perms[ci] = tuple(swap)
            pi(ctx, ClassPerm(tuple(perms)))


def enumerate_aut(
    ctx: SandwichContext, limit: int | None = None, check: bool = True
) -> Iterator[Automorphism]:
    """Stream tau(t) * pi(c) over every triple t and class permutation c.

    With ``check`` each tau and a generating set of class permutations are
    verified up front, so every emitted automorphism is a product of
    verified ones and carries ``verified=True``.
    """
    if ctx.k == 0:
        raise DegenerateContext("structured generation needs k >= 1")
    if check:
        _check_generators(ctx)
    outer, block = _class_perm_blocks(ctx)
    taus = [(t, tau(ctx, t, check=check)) for t in triples(ctx)]
    # pi fixes decomposables, so each product reads its own t back off the
    # atoms; blocks for distinct t are then disjoint and no bookkeeping is needed
    seen = None if all(_extract_triple(ctx, s.images) == t for t, s in taus) else set()
    emitted = 0
    for _, tau_t in taus:
        tau_img = np.array(tau_t.images, dtype=np.int64)
        for choice in itertools.product(*(range(len(imgs)) for _, imgs in outer)):
            rows = block.copy()
            for (members, imgs), d in zip(outer, choice):
                rows[:, members] = imgs[d]
            for row in rows[:, tau_img].tolist():
                if limit is not None and emitted >= limit:
                    return
                key = tuple(row)
                if seen is not None:
                    if key in seen:
                        continue
                    seen.add(key)
                emitted += 1
                yield Automorphism(key, verified=check)
