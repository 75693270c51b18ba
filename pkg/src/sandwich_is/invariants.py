"""Property checks over a sandwich context.

Every check returns a list of human-readable counterexamples; an empty
list means the property holds. Checks are exhaustive up to
``EXHAUSTIVE_N`` and fall back to seeded random sampling above it.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Callable

from . import aut, congruence, core, oracle
from .core import compose, inverse
from .errors import SandwichError
from .sandwich import (
    SandwichContext,
    decompose,
    ideal_membership,
    idempotents,
    in_ann,
    in_ann_l,
    in_ann_r,
    is_decomposable,
    is_idempotent,
    min_idempotent_rank,
    natural_leq,
    normalize,
    product,
)

EXHAUSTIVE_N = 3
# Stop collecting after this many counterexamples per check
MAX_REPORT = 5


def _triples(ctx: SandwichContext, rng: random.Random, samples: int, exhaustive_n: int):
    elements = core.enumerate_all(ctx.n)
    if ctx.n <= exhaustive_n:
        return itertools.product(elements, repeat=3)
    return ((rng.choice(elements), rng.choice(elements), rng.choice(elements)) for _ in range(samples))


def compose_associativity(ctx, rng, samples=100_000) -> list[str]:
    bad = []
    for a, b, c in _triples(ctx, rng, samples, exhaustive_n=2):
        if compose(compose(a, b), c) != compose(a, compose(b, c)):
            bad.append(f"({a})({b})({c})")
            if len(bad) >= MAX_REPORT:
                break
    return bad


def core_laws(ctx, rng) -> list[str]:
    bad = []
    elements = core.enumerate_all(ctx.n)
    if len(elements) != core.universe_size(ctx.n) or len(set(elements)) != len(elements):
        bad.append(f"enumerate_all({ctx.n}) has {len(elements)} elements or duplicates")
    for a in elements:
        if compose(a, inverse(a)) != core.identity(ctx.n, a.dom):
            bad.append(f"a a^-1 != id_dom for {a}")
        if core.parse(str(a), ctx.n) != a:
            bad.append(f"round trip failed for {a}")
    for _ in range(2000):
        a, b = rng.choice(elements), rng.choice(elements)
        if compose(a, b).rank > min(a.rank, b.rank):
            bad.append(f"rank bound fails for {a}, {b}")
    return bad[:MAX_REPORT]


def sandwich_associativity(ctx, rng, samples=100_000) -> list[str]:
    bad = []
    for a, b, c in _triples(ctx, rng, samples, exhaustive_n=2):
        if product(ctx, product(ctx, a, b), c) != product(ctx, a, product(ctx, b, c)):
            bad.append(f"({a})*({b})*({c})")
            if len(bad) >= MAX_REPORT:
                break
    return bad


def middle_identity(ctx, rng) -> list[str]:
    bad = []
    if product(ctx, ctx.e, ctx.e) != ctx.e:
        bad.append("e*e != e")
    elements = core.enumerate_all(ctx.n)
    pairs = itertools.product(elements, repeat=2) if ctx.n <= EXHAUSTIVE_N else (
        (rng.choice(elements), rng.choice(elements)) for _ in range(5000))
    for a, b in pairs:
        if product(ctx, a, b) != compose(compose(a, ctx.e), compose(ctx.e, b)):
            bad.append(f"a*b != (ae)(eb) for {a}, {b}")
            break
    return bad


def idempotent_characterization(ctx, rng) -> list[str]:
    bad = []
    for a in core.enumerate_all(ctx.n):
        if is_idempotent(ctx, a) != (product(ctx, a, a) == a):
            bad.append(f"idempotent test disagrees with a*a == a at {a}")
    listed = idempotents(ctx)
    found = [a for a in core.enumerate_all(ctx.n) if product(ctx, a, a) == a]
    if listed != found or len(listed) != 2 ** ctx.k:
        bad.append(f"idempotents(): {len(listed)} listed, {len(found)} by filtering, 2^k = {2 ** ctx.k}")
    return bad[:MAX_REPORT]


def natural_order_is_inclusion(ctx, rng) -> list[str]:
    elems = idempotents(ctx)
    return [
        f"{f} <= {h} disagrees with domain inclusion"
        for f in elems
        for h in elems
        if natural_leq(ctx, f, h) != (f.dom <= h.dom)
    ][:MAX_REPORT]


def annihilator_characterization(ctx, rng) -> list[str]:
    bad = []
    elements = core.enumerate_all(ctx.n)
    empty = core.empty(ctx.n)
    for a in elements:
        left = all(product(ctx, a, b) == empty for b in elements)
        right = all(product(ctx, b, a) == empty for b in elements)
        if (in_ann_l(ctx, a), in_ann_r(ctx, a), in_ann(ctx, a)) != (left, right, left and right):
            bad.append(f"annihilator membership wrong for {a}")
    return bad[:MAX_REPORT]


def decomposability(ctx, rng) -> list[str]:
    bad = []
    elements = core.enumerate_all(ctx.n)
    if ctx.n <= EXHAUSTIVE_N:
        products = {product(ctx, b, c) for b in elements for c in elements}
    else:
        products = None
    for a in elements:
        claimed = is_decomposable(ctx, a)
        if claimed != (a.rank <= ctx.k):
            bad.append(f"is_decomposable({a}) != rank <= k")
        if products is not None and claimed != (a in products):
            bad.append(f"is_decomposable({a}) = {claimed} but product set says otherwise")
        if claimed:
            b, c = decompose(ctx, a)
            if product(ctx, b, c) != a:
                bad.append(f"decompose witness fails for {a}")
    return bad[:MAX_REPORT]


def ideal_and_rank(ctx, rng) -> list[str]:
    bad = []
    idem = idempotents(ctx)
    for a in core.enumerate_all(ctx.n):
        for f in idem:
            w = ideal_membership(ctx, f, a)
            if (w is not None) != (a.rank <= f.rank):
                bad.append(f"ideal membership of {a} in ideal of {f} wrong")
            elif w is not None and product(ctx, product(ctx, w[0], f), w[1]) != a:
                bad.append(f"ideal witness fails for {a}, f={f}")
        if is_decomposable(ctx, a) and min_idempotent_rank(ctx, a) != a.rank:
            bad.append(f"min idempotent rank of {a} != rank")
    return bad[:MAX_REPORT]


def normalize_homomorphism(ctx, rng, sandwich=None) -> list[str]:
    """iso from (IS_n, *_a) to (IS_n, *_e) is a bijective homomorphism."""
    a = ctx.sandwich if sandwich is None else sandwich
    _, _, iso = normalize(a)
    e = core.identity(ctx.n, range(1, a.rank + 1))
    elements = core.enumerate_all(ctx.n)
    if len({iso(x) for x in elements}) != len(elements):
        return [f"normalize({a}) is not bijective"]
    for x in elements:
        ix = iso(x)
        for y in elements:
            lhs = iso(compose(compose(x, a), y))
            rhs = compose(compose(ix, e), iso(y))
            if lhs != rhs:
                return [f"normalize({a}) fails at x={x}, y={y}"]
    return []


def similarity_is_equivalence(ctx, rng) -> list[str]:
    # similarity is equality of keys, so check the keys reproduce the quoted definition
    bad = []
    elements = core.enumerate_all(ctx.n)
    profiles = [congruence.profile(ctx, a) for a in elements]
    for a, pa in zip(elements, profiles):
        if set().union(pa.m1, pa.m2, pa.m3, pa.m4) != a.dom:
            bad.append(f"profile of {a} does not cover its domain")
    for (a, pa), (b, pb) in itertools.product(zip(elements, profiles), repeat=2):
        if not pa.indecomposable or not pb.indecomposable:
            expected = a == b
        else:
            expected = (pa.m1, pa.m2, pa.m3) == (pb.m1, pb.m2, pb.m3) and all(
                a(x) == b(x) for x in pa.m1 | pa.m2 | pa.m3
            )
        if (pa.key == pb.key) != expected:
            bad.append(f"similar({a}, {b}) disagrees with the definition")
            if len(bad) >= MAX_REPORT:
                break
    sizes = sum(len(c) for c in congruence.classes(ctx))
    if sizes != len(elements):
        bad.append(f"class sizes sum to {sizes}, expected {len(elements)}")
    return bad


def congruence_closed(ctx, rng) -> list[str]:
    return [" ~ ".join(v) for v in congruence.congruence_violations(ctx)][:MAX_REPORT]


def tau_properties(ctx, rng) -> list[str]:
    """tau outputs: automorphisms, fix e, keep ranks of decomposables, move profiles."""
    if ctx.k == 0:
        return []
    bad = []
    elements = core.enumerate_all(ctx.n)
    e_index = core.index_of(ctx.e)
    k = ctx.k
    for t in aut.triples(ctx):
        s = aut.tau(ctx, t)
        g = dict(zip(range(1, k + 1), t.g))
        h1 = dict(zip(range(k + 1, ctx.n + 1), t.h1))
        h2 = dict(zip(range(k + 1, ctx.n + 1), t.h2))
        gh1, gh2 = {**g, **h1}, {**g, **h2}
        if s(e_index) != e_index:
            bad.append(f"tau{t} moves e")
        for i, a in enumerate(elements):
            b = elements[s(i)]
            if a.rank <= k and b.rank != a.rank:
                bad.append(f"tau{t} changes rank of decomposable {a}")
            if a.rank == 1:
                (x, y), = a.pairs
                if b.pairs != ((gh1[x], gh2[y]),):
                    bad.append(f"tau{t}({a}) = {b}, expected {gh1[x]}>{gh2[y]}")
            pa, pb = congruence.profile(ctx, a), congruence.profile(ctx, b)
            if pb.m1 != {g[x] for x in pa.m1} or any(b(g[x]) != g[a(x)] for x in pa.m1):
                bad.append(f"tau{t}: M1 identity fails at {a}")
            if pb.m2 != {g[x] for x in pa.m2} or any(b(g[x]) != h2[a(x)] for x in pa.m2):
                bad.append(f"tau{t}: M2 identity fails at {a}")
            if pb.m3 != {h1[x] for x in pa.m3} or any(b(h1[x]) != g[a(x)] for x in pa.m3):
                bad.append(f"tau{t}: M3 identity fails at {a}")
            if len(bad) >= MAX_REPORT:
                return bad
    return bad


def _class_perm_samples(ctx, rng, count):
    cls = aut._classes(ctx)
    perms = []
    for ci, c in enumerate(cls):
        for j in range(len(c) - 1):
            base = [tuple(range(len(d))) for d in cls]
            swap = list(range(len(c)))
            swap[j], swap[j + 1] = swap[j + 1], swap[j]
            base[ci] = tuple(swap)
            perms.append(aut.ClassPerm(tuple(base)))
    for _ in range(count):
        perms.append(aut.ClassPerm(tuple(tuple(rng.sample(range(len(c)), len(c))) for c in cls)))
    return perms


def semidirect_structure(ctx, rng, samples=200) -> list[str]:
    """pi outputs are automorphisms, the intersection with the taus is trivial,
    class permutations form a normal subgroup, and factorize round-trips."""
    if ctx.k == 0:
        return []
    bad = []
    elements = core.enumerate_all(ctx.n)
    ident_cp = aut.ClassPerm.identity(aut._classes(ctx))
    taus = [(t, aut.tau(ctx, t)) for t in aut.triples(ctx)]
    for t, s in taus:
        try:
            cp = aut.class_perm_from_images(ctx, s.images)
        except aut.CrossClassMove:
            continue
        if not cp.is_identity() or t != aut.GTriple.identity(ctx):
            bad.append(f"tau{t} is also a class permutation")
    for cp in _class_perm_samples(ctx, rng, samples):
        p = aut.pi(ctx, cp)
        for i, a in enumerate(elements):
            if a.rank <= ctx.k and p(i) != i:
                bad.append(f"class permutation moves decomposable {a}")
                break
        for t, s in taus:
            conj = aut.compose_aut(aut.compose_aut(aut.inverse_aut(s), p), s)
            try:
                aut.class_perm_from_images(ctx, conj.images)
            except aut.CrossClassMove:
                bad.append(f"conjugate of a class permutation by tau{t} leaves the subgroup")
            sigma = aut.compose_aut(s, p)
            if aut.factorize(ctx, sigma) != (t, cp):
                bad.append(f"factorize(tau{t} pi) does not round-trip")
            elif aut.compose_aut(aut.tau(ctx, t), aut.pi(ctx, cp)) != sigma:
                bad.append("recomposition differs")
        if len(bad) >= MAX_REPORT:
            break
    if not aut.factorize(ctx, aut.identity_aut(ctx)) == (aut.GTriple.identity(ctx), ident_cp):
        bad.append("identity does not factor trivially")
    return bad[:MAX_REPORT]


def order_agreement(ctx, rng) -> list[str]:
    """Formula, structured enumeration and the table oracle give one order."""
    formula = aut.aut_order(ctx)
    oracle_count = oracle.count_automorphisms(oracle.cayley(ctx))
    bad = []
    if oracle_count != formula:
        bad.append(f"oracle counts {oracle_count} automorphisms, formula gives {formula}")
    if ctx.k >= 1 and formula <= 2_000_000:
        built = sum(1 for _ in aut.enumerate_aut(ctx, check=False))
        if built != formula:
            bad.append(f"structured enumeration yields {built}, formula gives {formula}")
    return bad


@dataclass
class SuiteResult:
    name: str
    violations: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations


CHECKS: list[tuple[str, Callable, int]] = [
    # (name, check, largest n it runs at)
    ("compose associativity", compose_associativity, 4),
    ("core laws", core_laws, 4),
    ("sandwich associativity", sandwich_associativity, 4),
    ("middle identity", middle_identity, 4),
    ("idempotent characterization", idempotent_characterization, 4),
    ("natural order = inclusion", natural_order_is_inclusion, 4),
    ("annihilator characterization", annihilator_characterization, 3),
    ("decomposability", decomposability, 4),
    ("ideal membership and rank", ideal_and_rank, 4),
    ("normalize is an isomorphism", normalize_homomorphism, 3),
    ("similarity definition", similarity_is_equivalence, 3),
    ("congruence closure", congruence_closed, 3),
    ("tau properties", tau_properties, 4),
    ("semidirect structure", semidirect_structure, 3),
    ("order agreement", order_agreement, 3),
]


def run_all(ctx: SandwichContext, seed: int = 0, samples: int = 10_000) -> list[SuiteResult]:
    results = []
    for name, check, max_n in CHECKS:
        if ctx.n > max_n:
            continue
        rng = random.Random(f"{seed}:{name}")
        try:
            if check in (compose_associativity, sandwich_associativity):
                violations = check(ctx, rng, samples)
            else:
                violations = check(ctx, rng)
        except SandwichError as exc:
            # a library routine rejecting its own output is a violation too
            violations = [f"raised {type(exc).__name__}: {exc}"]
        results.append(SuiteResult(name, violations))
    return results
