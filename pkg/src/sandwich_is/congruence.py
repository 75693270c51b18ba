"""The congruence ~ on (IS_n, *) and its classes.

Decomposable elements (rank <= k) are alone in their class. Two
indecomposable elements are equivalent when they agree on the three
profile sets

    m1 = {x in dom : x in A,     a(x) in A}
    m2 = {x in dom : x in A,     a(x) not in A}
    m3 = {x in dom : x not in A, a(x) in A}

and take the same values there. Points outside A that map outside A (the
fourth set) are ignored.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import core
from .core import PartialInjection
from .sandwich import SandwichContext, is_decomposable, product


@dataclass(frozen=True)
class MProfile:
    m1: frozenset[int]
    m2: frozenset[int]
    m3: frozenset[int]
    m4: frozenset[int]
    fixed_values: tuple[tuple[int, int], ...]
    indecomposable: bool
    element: str

    @property
    def key(self) -> tuple:
        if not self.indecomposable:
            return ("P", self.element)
        return ("Q", tuple(sorted(self.m1)), tuple(sorted(self.m2)),
                tuple(sorted(self.m3)), self.fixed_values)

    def key_string(self) -> str:
        """Canonical text form of :attr:`key`, used in JSON output."""
        if not self.indecomposable:
            return f"P:{self.element}"
        sets = "|".join(",".join(map(str, sorted(s))) for s in (self.m1, self.m2, self.m3))
        values = ",".join(f"{x}>{y}" for x, y in self.fixed_values)
        return f"Q:{sets}|{values}"


def profile(ctx: SandwichContext, a: PartialInjection) -> MProfile:
    sets: list[set[int]] = [set(), set(), set(), set()]
    for x, y in a.pairs:
        slot = (0 if ctx.in_A(y) else 1) if ctx.in_A(x) else (2 if ctx.in_A(y) else 3)
        sets[slot].add(x)
    fixed = tuple((x, y) for x, y in a.pairs if x not in sets[3])
    return MProfile(
        *(frozenset(s) for s in sets),
        fixed_values=fixed,
        indecomposable=not is_decomposable(ctx, a),
        element=str(a),
    )


def similar(ctx: SandwichContext, a: PartialInjection, b: PartialInjection) -> bool:
    return profile(ctx, a).key == profile(ctx, b).key


@dataclass(frozen=True)
class CongruenceClass:
    key: str
    members: tuple[int, ...]  # canonical indices, ascending

    def __len__(self) -> int:
        return len(self.members)


def classes(ctx: SandwichContext) -> list[CongruenceClass]:
    """The ~-classes, ordered by smallest member index."""
    groups: dict[tuple, list[int]] = {}
    labels: dict[tuple, str] = {}
    for i, a in enumerate(core.enumerate_all(ctx.n)):
        p = profile(ctx, a)
        groups.setdefault(p.key, []).append(i)
        labels.setdefault(p.key, p.key_string())
    ordered = sorted(groups.items(), key=lambda kv: kv[1][0])
    return [CongruenceClass(labels[key], tuple(members)) for key, members in ordered]


def class_index(ctx: SandwichContext, classes_: list[CongruenceClass] | None = None) -> list[int]:
    """For each canonical element index, the index of its class."""
    if classes_ is None:
        classes_ = classes(ctx)
    owner = [0] * core.universe_size(ctx.n)
    for ci, cls in enumerate(classes_):
        for i in cls.members:
            owner[i] = ci
    return owner


def classes_to_json(ctx: SandwichContext, classes_: list[CongruenceClass] | None = None) -> list[dict]:
    elements = core.enumerate_all(ctx.n)
    if classes_ is None:
        classes_ = classes(ctx)
    return [{"key": c.key, "members": [str(elements[i]) for i in c.members]} for c in classes_]


def congruence_violations(ctx: SandwichContext) -> list[tuple[str, str, str, str]]:
    """Quadruples (a, a', b, b') with a ~ a', b ~ b' and a*b != a'*b'.

    Compares every product inside each block (P_i, P_j) against the block's
    first product, which covers all quadruples.
    """
    elements = core.enumerate_all(ctx.n)
    found = []
    cls = classes(ctx)
    for left in cls:
        for right in cls:
            a0, b0 = elements[left.members[0]], elements[right.members[0]]
            expected = product(ctx, a0, b0)
            for i in left.members:
                for j in right.members:
                    a, b = elements[i], elements[j]
                    if product(ctx, a, b) != expected:
                        found.append((str(a0), str(a), str(b0), str(b)))
    return found

