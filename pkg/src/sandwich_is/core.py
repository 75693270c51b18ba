"""Partial injective maps on {1..n}: the element algebra of IS_n.

Maps compose left to right: ``compose(a, b)`` applies ``a`` first, so
``compose(a, b)(x) == b(a(x))``.
"""

from __future__ import annotations

import functools
import itertools
import json
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    CapExceeded,
    DuplicateDomain,
    DuplicateImage,
    OutOfRange,
    ParseError,
    SizeMismatch,
)

# enumerate_all refuses n above this; |IS_6| = 13327 elements
MAX_ENUMERATE_N = 6

UNDEFINED = 0


@dataclass(frozen=True)
class PartialInjection:
    """A partial injection of N = {1..n}.

    ``images[x - 1]`` is the image of ``x``, or ``UNDEFINED`` (0) when ``x``
    is outside the domain. Build instances with :func:`make` or
    :func:`parse`; the constructor does not validate.
    """

    n: int
    images: tuple[int, ...]

    def __call__(self, x: int) -> int | None:
        y = self.images[x - 1]
        return y if y else None

    @property
    def pairs(self) -> tuple[tuple[int, int], ...]:
        return tuple((x, y) for x, y in enumerate(self.images, 1) if y)

    @property
    def rank(self) -> int:
        return sum(1 for y in self.images if y)

    @property
    def dom(self) -> frozenset[int]:
        return frozenset(x for x, y in enumerate(self.images, 1) if y)

    @property
    def im(self) -> frozenset[int]:
        return frozenset(y for y in self.images if y)

    def sort_key(self) -> tuple[int, str]:
        return (self.rank, str(self))

    def to_json(self) -> dict:
        return {"n": self.n, "pairs": [list(p) for p in self.pairs]}

    def __str__(self) -> str:
        return ",".join(f"{x}>{y}" for x, y in self.pairs)

    def __repr__(self) -> str:
        return f"PartialInjection(n={self.n}, '{self}')"


def make(n: int, pairs: Iterable[Sequence[int]]) -> PartialInjection:
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    images = [UNDEFINED] * n
    seen_images = set()
    for x, y in pairs:
        for v in (x, y):
            if not 1 <= v <= n:
                raise OutOfRange(v, n)
        if images[x - 1]:
            raise DuplicateDomain(x)
        if y in seen_images:
            raise DuplicateImage(y)
        images[x - 1] = y
        seen_images.add(y)
    return PartialInjection(n, tuple(images))


def identity(n: int, points: Iterable[int] | None = None) -> PartialInjection:
    """Identity on ``points`` (all of N when omitted)."""
    if points is None:
        points = range(1, n + 1)
    return make(n, ((x, x) for x in points))


def empty(n: int) -> PartialInjection:
    return PartialInjection(n, (UNDEFINED,) * n)


def _check_sizes(a: PartialInjection, b: PartialInjection) -> None:
    if a.n != b.n:
        raise SizeMismatch(f"elements live on different base sets: n={a.n} vs n={b.n}")


def compose(a: PartialInjection, b: PartialInjection) -> PartialInjection:
    _check_sizes(a, b)
    bi = b.images
    return PartialInjection(a.n, tuple(bi[y - 1] if y else UNDEFINED for y in a.images))


def inverse(a: PartialInjection) -> PartialInjection:
    images = [UNDEFINED] * a.n
    for x, y in enumerate(a.images, 1):
        if y:
            images[y - 1] = x
    return PartialInjection(a.n, tuple(images))


def rank(a: PartialInjection) -> int:
    return a.rank


def dom(a: PartialInjection) -> frozenset[int]:
    return a.dom


def im(a: PartialInjection) -> frozenset[int]:
    return a.im


def restrict(a: PartialInjection, points: Iterable[int]) -> PartialInjection:
    keep = set(points)
    return PartialInjection(
        a.n, tuple(y if x in keep else UNDEFINED for x, y in enumerate(a.images, 1))
    )


def is_total(a: PartialInjection) -> bool:
    return all(a.images)


def to_canonical_string(a: PartialInjection) -> str:
    return str(a)


def parse(text: str, n: int) -> PartialInjection:
    """Parse ``"x>y,x>y,..."``; the empty string is the empty map.

    Pairs may appear in any order. Whitespace around tokens is ignored.
    """
    if not text.strip():
        return empty(n)
    pairs = []
    pos = 0
    for chunk in text.split(","):
        left, sep, right = chunk.partition(">")
        if not sep:
            raise ParseError(f"expected 'x>y', got {chunk.strip()!r}", pos)
        try:
            x = int(left)
        except ValueError:
            raise ParseError(f"bad domain point {left.strip()!r}", pos) from None
        try:
            y = int(right)
        except ValueError:
            raise ParseError(f"bad image point {right.strip()!r}", pos + len(left) + 1) from None
        pairs.append((x, y))
        pos += len(chunk) + 1
    return make(n, pairs)


def from_json(data: dict | str) -> PartialInjection:
    if isinstance(data, str):
        data = json.loads(data)
    return make(int(data["n"]), [tuple(p) for p in data["pairs"]])


def universe_size(n: int) -> int:
    return sum(math.comb(n, i) ** 2 * math.factorial(i) for i in range(n + 1))


@functools.lru_cache(maxsize=None)
def enumerate_all(n: int) -> tuple[PartialInjection, ...]:
    """Every element of IS_n ordered by (rank, canonical string).

    Position in this tuple is the element's canonical index.
    """
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if n > MAX_ENUMERATE_N:
        raise CapExceeded(f"enumerate_all is capped at n={MAX_ENUMERATE_N}, got n={n}")
    points = range(1, n + 1)
    elements = []
    for r in range(n + 1):
        for domain in itertools.combinations(points, r):
            for image in itertools.permutations(points, r):
                elements.append(make(n, zip(domain, image)))
    elements.sort(key=PartialInjection.sort_key)
    return tuple(elements)


@functools.lru_cache(maxsize=None)
def _index_table(n: int) -> dict[PartialInjection, int]:
    return {a: i for i, a in enumerate(enumerate_all(n))}


def index_of(a: PartialInjection) -> int:
    """Canonical index of ``a`` in ``enumerate_all(a.n)``."""
    return _index_table(a.n)[a]


@functools.lru_cache(maxsize=None)
def image_matrix(n: int) -> np.ndarray:
    """``(|IS_n|, n)`` int32 array of image tuples in canonical order."""
    arr = np.array([a.images for a in enumerate_all(n)], dtype=np.int32)
    arr.setflags(write=False)
    return arr


@functools.lru_cache(maxsize=None)
def index_lookup(n: int) -> np.ndarray:
    """Dense array mapping an image tuple read as a base-(n+1) number to its index."""
    codes = image_matrix(n) @ ((n + 1) ** np.arange(n, dtype=np.int64))
    lookup = np.full((n + 1) ** n, -1, dtype=np.int32)
    lookup[codes] = np.arange(len(codes), dtype=np.int32)
    lookup.setflags(write=False)
    return lookup
