"""The sandwich semigroup (IS_n, *) with product a * b = a e b.

Any sandwich element is replaced at context creation by the idempotent
``e`` = identity on A = {1..k}, k its rank; :func:`normalize` gives the
explicit isomorphism that justifies the swap.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable

from . import core
from .core import PartialInjection, compose, inverse, make
from .errors import Indecomposable, NotIdempotent, SizeMismatch


@dataclass(frozen=True)
class SandwichContext:
    n: int
    sandwich: PartialInjection
    e: PartialInjection
    k: int

    @property
    def A(self) -> frozenset[int]:
        return frozenset(range(1, self.k + 1))

    @property
    def A_bar(self) -> frozenset[int]:
        return frozenset(range(self.k + 1, self.n + 1))

    def in_A(self, x: int) -> bool:
        return 1 <= x <= self.k

    def to_json(self) -> dict:
        return {"n": self.n, "sandwich": self.sandwich.to_json()}


def context(n: int, sandwich: PartialInjection) -> SandwichContext:
    if sandwich.n != n:
        raise SizeMismatch(f"sandwich element lives on n={sandwich.n}, context has n={n}")
    k = sandwich.rank
    return SandwichContext(n, sandwich, core.identity(n, range(1, k + 1)), k)


def context_k(n: int, k: int) -> SandwichContext:
    """Context whose sandwich element is already the idempotent on {1..k}."""
    if not 0 <= k <= n:
        raise ValueError(f"k must lie in 0..{n}, got {k}")
    return context(n, core.identity(n, range(1, k + 1)))


def context_from_json(data: dict) -> SandwichContext:
    return context(int(data["n"]), core.from_json(data["sandwich"]))


def _check(ctx: SandwichContext, *elements: PartialInjection) -> None:
    for a in elements:
        if a.n != ctx.n:
            raise SizeMismatch(f"element on n={a.n} used in context with n={ctx.n}")


def product(ctx: SandwichContext, a: PartialInjection, b: PartialInjection) -> PartialInjection:
    _check(ctx, a, b)
    return compose(compose(a, ctx.e), b)


def is_idempotent(ctx: SandwichContext, a: PartialInjection) -> bool:
    # idempotent of IS_n whose domain lies in A
    return all(y == x and x <= ctx.k for x, y in enumerate(a.images, 1) if y)


def idempotents(ctx: SandwichContext) -> list[PartialInjection]:
    result = [
        core.identity(ctx.n, subset)
        for r in range(ctx.k + 1)
        for subset in itertools.combinations(range(1, ctx.k + 1), r)
    ]
    result.sort(key=PartialInjection.sort_key)
    return result


def natural_leq(ctx: SandwichContext, f: PartialInjection, h: PartialInjection) -> bool:
    """f <= h in the natural order: f * h == h * f == f."""
    for x in (f, h):
        if not is_idempotent(ctx, x):
            raise NotIdempotent(f"{x} is not an idempotent of the sandwich semigroup")
    return product(ctx, f, h) == f and product(ctx, h, f) == f


def hasse_edges(ctx: SandwichContext) -> list[tuple[PartialInjection, PartialInjection]]:
    """Covering pairs (f, h), f < h, of the idempotent lattice."""
    elems = idempotents(ctx)
    return [
        (f, h)
        for f in elems
        for h in elems
        if f != h and natural_leq(ctx, f, h) and h.rank == f.rank + 1
    ]


def in_ann_l(ctx: SandwichContext, a: PartialInjection) -> bool:
    return all(y > ctx.k for y in a.images if y)


def in_ann_r(ctx: SandwichContext, a: PartialInjection) -> bool:
    return all(x > ctx.k for x, y in enumerate(a.images, 1) if y)


def in_ann(ctx: SandwichContext, a: PartialInjection) -> bool:
    return in_ann_l(ctx, a) and in_ann_r(ctx, a)


def is_decomposable(ctx: SandwichContext, a: PartialInjection) -> bool:
    return a.rank <= ctx.k


def _route(a: PartialInjection, through: list[int]) -> tuple[PartialInjection, PartialInjection]:
    # b sends the i-th smallest domain point to through[i], c continues to a's image
    pairs = a.pairs
    b = make(a.n, ((x, p) for (x, _), p in zip(pairs, through)))
    c = make(a.n, ((p, y) for (_, y), p in zip(pairs, through)))
    return b, c


def decompose(ctx: SandwichContext, a: PartialInjection) -> tuple[PartialInjection, PartialInjection]:
    """Return (b, c) with b * c == a; requires rank(a) <= k."""
    _check(ctx, a)
    if not is_decomposable(ctx, a):
        raise Indecomposable(f"{a} has rank {a.rank} > k = {ctx.k}")
    return _route(a, list(range(1, a.rank + 1)))


def ideal_membership(
    ctx: SandwichContext, f: PartialInjection, a: PartialInjection
) -> tuple[PartialInjection, PartialInjection] | None:
    """Witness (x, y) with x * f * y == a, or None when a is outside the ideal of f."""
    _check(ctx, f, a)
    if not is_idempotent(ctx, f):
        raise NotIdempotent(f"{f} is not an idempotent of the sandwich semigroup")
    if a.rank > f.rank:
        return None
    return _route(a, sorted(f.dom)[: a.rank])


def min_idempotent_rank(ctx: SandwichContext, a: PartialInjection) -> int:
    if not is_decomposable(ctx, a):
        raise Indecomposable(f"{a} has rank {a.rank} > k = {ctx.k}")
    return min(f.rank for f in idempotents(ctx) if ideal_membership(ctx, f, a) is not None)


def iso_criterion(a: PartialInjection, b: PartialInjection) -> bool:
    if a.n != b.n:
        raise SizeMismatch(f"n={a.n} vs n={b.n}")
    return a.rank == b.rank


def _fill(n: int, partial: dict[int, int]) -> PartialInjection:
    free_src = [x for x in range(1, n + 1) if x not in partial]
    free_dst = [y for y in range(1, n + 1) if y not in partial.values()]
    return make(n, list(partial.items()) + list(zip(free_src, free_dst)))


def normalize(
    a: PartialInjection,
) -> tuple[PartialInjection, PartialInjection, Callable[[PartialInjection], PartialInjection]]:
    """Isomorphism from (IS_n, *_a) onto (IS_n, *_e), e the identity on {1..rank(a)}.

    Returns ``(p, q, iso)`` with ``iso(x) = p x q``. With d_1 < ... < d_k
    the domain of ``a``, ``q(d_i) = i`` and ``p(i) = a(d_i)``, so that
    ``q e p == a``; unassigned points are matched in ascending order.
    """
    pairs = a.pairs
    q = _fill(a.n, {d: i for i, (d, _) in enumerate(pairs, 1)})
    p = _fill(a.n, {i: r for i, (_, r) in enumerate(pairs, 1)})

    def iso(x: PartialInjection) -> PartialInjection:
        return compose(compose(p, x), q)

    return p, q, iso


def normalize_inverse(a: PartialInjection) -> Callable[[PartialInjection], PartialInjection]:
    p, q, _ = normalize(a)
    p_inv, q_inv = inverse(p), inverse(q)
    return lambda x: compose(compose(p_inv, x), q_inv)
