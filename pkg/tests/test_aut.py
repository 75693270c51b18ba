import itertools
import math
import random

import pytest

from sandwich_is import aut, core, invariants, oracle
from sandwich_is.aut import (
    Automorphism,
    ClassPerm,
    GTriple,
    aut_order,
    combined_perm,
    compose_aut,
    enumerate_aut,
    factorize,
    identity_aut,
    inverse_aut,
    is_automorphism,
    pi,
    tau,
)
from sandwich_is.core import index_of, make
from sandwich_is.errors import CrossClassMove, DegenerateContext, NotAutomorphism
from sandwich_is.sandwich import context_k

from conftest import brute_force_automorphisms


def test_combined_perm():
    ctx = context_k(3, 1)
    assert combined_perm(ctx, (1,), (2, 3)) == core.identity(3)
    assert combined_perm(ctx, (1,), (3, 2)) == make(3, [(1, 1), (2, 3), (3, 2)])
    ctx = context_k(3, 2)
    seen = {combined_perm(ctx, g, h) for g in itertools.permutations((1, 2)) for h in [(3,)]}
    assert len(seen) == 2


def test_tau_identity():
    ctx = context_k(3, 1)
    assert tau(ctx, GTriple.identity(ctx)) == identity_aut(ctx)


def test_tau_on_rank_one():
    ctx = context_k(3, 1)
    s = tau(ctx, GTriple((1,), (3, 2), (2, 3)))
    assert core.enumerate_all(3)[s(index_of(make(3, [(2, 2)])))] == make(3, [(3, 2)])


@pytest.mark.parametrize("n, k", [(2, 1), (3, 1), (3, 2), (3, 3)])
def test_tau_is_injective_and_verified(n, k):
    ctx = context_k(n, k)
    images = set()
    for t in aut.triples(ctx):
        s = tau(ctx, t)
        assert s.verified and is_automorphism(ctx, s.images)
        images.add(s.images)
    assert len(images) == math.factorial(k) * math.factorial(n - k) ** 2


def test_tau_products_match_triple_products():
    ctx = context_k(3, 1)
    ts = list(aut.triples(ctx))
    for t1, t2 in itertools.product(ts, repeat=2):
        assert compose_aut(tau(ctx, t1), tau(ctx, t2)) == tau(ctx, t1.then(t2))


def test_pi_identity_and_swap():
    ctx = context_k(3, 1)
    cls = aut._classes(ctx)
    assert pi(ctx, ClassPerm.identity(cls)) == identity_aut(ctx)
    target = {index_of(make(3, [(2, 2), (3, 3)])), index_of(make(3, [(2, 3), (3, 2)]))}
    ci = next(i for i, c in enumerate(cls) if set(c.members) == target)
    perms = [tuple(range(len(c))) for c in cls]
    perms[ci] = (1, 0)
    s = pi(ctx, ClassPerm(tuple(perms)))
    assert s.verified
    assert is_automorphism(ctx, s.images)


def test_pi_rejects_cross_class_moves():
    ctx = context_k(3, 1)
    images = list(range(34))
    a, b = index_of(make(3, [(1, 1)])), index_of(make(3, [(2, 2)]))
    images[a], images[b] = b, a
    with pytest.raises(CrossClassMove):
        aut.class_perm_from_images(ctx, images)
    cls = aut._classes(ctx)
    bad = [tuple(range(len(c))) for c in cls]
    bad[0] = (1,)
    with pytest.raises(CrossClassMove):
        pi(ctx, ClassPerm(tuple(bad)))


def test_is_automorphism_examples():
    ctx = context_k(3, 2)
    assert is_automorphism(ctx, identity_aut(ctx).images)
    # swap a rank-1 and a rank-2 decomposable
    images = list(range(34))
    a, b = index_of(make(3, [(1, 1)])), index_of(make(3, [(1, 1), (2, 2)]))
    images[a], images[b] = b, a
    assert not is_automorphism(ctx, images)
    assert not is_automorphism(ctx, [0] * 34)
    assert not is_automorphism(ctx, list(range(33)))


def test_compose_and_inverse():
    ctx = context_k(3, 1)
    s = tau(ctx, GTriple((1,), (3, 2), (2, 3)))
    assert compose_aut(s, inverse_aut(s)) == identity_aut(ctx)
    assert inverse_aut(s).verified
    unverified = Automorphism(s.images)
    assert not compose_aut(s, unverified).verified


def test_identity_fixes_e():
    for n, k in [(2, 1), (3, 1), (3, 2)]:
        ctx = context_k(n, k)
        e = index_of(ctx.e)
        for s in enumerate_aut(ctx, limit=200):
            assert s(e) == e


class TestFactorize:
    def test_identity(self):
        ctx = context_k(3, 1)
        t, cp = factorize(ctx, identity_aut(ctx))
        assert t == GTriple.identity(ctx) and cp.is_identity()

    def test_pure_tau(self):
        ctx = context_k(3, 1)
        for t in aut.triples(ctx):
            got_t, cp = factorize(ctx, tau(ctx, t))
            assert got_t == t and cp.is_identity()

    def test_round_trip_sampled(self):
        ctx = context_k(3, 1)
        rng = random.Random(7)
        cls = aut._classes(ctx)
        triples = list(aut.triples(ctx))
        for _ in range(50):
            t = rng.choice(triples)
            cp = ClassPerm(tuple(tuple(rng.sample(range(len(c)), len(c))) for c in cls))
            sigma = compose_aut(tau(ctx, t), pi(ctx, cp))
            assert factorize(ctx, sigma) == (t, cp)

    def test_unverified_input_is_checked(self):
        ctx = context_k(3, 1)
        s = tau(ctx, GTriple((1,), (3, 2), (2, 3)))
        assert factorize(ctx, Automorphism(s.images))[0] == GTriple((1,), (3, 2), (2, 3))
        images = list(range(34))
        images[0], images[1] = 1, 0
        with pytest.raises(NotAutomorphism):
            factorize(ctx, Automorphism(tuple(images)))

    def test_degenerate(self):
        ctx = context_k(2, 0)
        with pytest.raises(DegenerateContext):
            factorize(ctx, identity_aut(ctx))

    def test_json(self):
        ctx = context_k(3, 1)
        cls = aut._classes(ctx)
        t = GTriple((1,), (3, 2), (2, 3))
        cp = ClassPerm(tuple(tuple(reversed(range(len(c)))) for c in cls))
        data = aut.factorization_to_json(t, cp)
        assert data["g"] == [1] and data["h1"] == [3, 2] and data["h2"] == [2, 3]
        assert ClassPerm.from_json(data["class_perms"], cls) == cp


@pytest.mark.parametrize(
    "n, k, expected",
    [(3, 3, 6), (2, 1, 1), (3, 2, 2), (2, 2, 2), (3, 1, 6 * 2**9 * 4 * 120), (2, 0, 720), (1, 0, 1)],
)
def test_aut_order(n, k, expected):
    assert aut_order(context_k(n, k)) == expected


def test_k0_formula_overstates():
    ctx = context_k(2, 0)
    assert aut.semidirect_formula_order(ctx) == 2 * 2 * math.factorial(6)
    assert aut.semidirect_formula_order(ctx) != aut_order(ctx)


@pytest.mark.parametrize("k", [0, 1, 2])
def test_aut_order_matches_brute_force_n2(k):
    ctx = context_k(2, k)
    table = oracle.cayley(ctx).table.tolist()
    assert len(brute_force_automorphisms(table)) == aut_order(ctx)


def test_enumerate_aut_small():
    assert list(enumerate_aut(context_k(2, 1))) == [identity_aut(context_k(2, 1))]
    ctx = context_k(3, 2)
    found = list(enumerate_aut(ctx))
    assert len(found) == 2
    assert found[1] == tau(ctx, GTriple((2, 1), (3,), (3,)))
    ctx = context_k(3, 3)
    found = list(enumerate_aut(ctx))
    assert found == [tau(ctx, t) for t in aut.triples(ctx)] and len(found) == 6


def test_enumerate_aut_matches_oracle_sets():
    for n, k in [(2, 1), (2, 2), (3, 2), (3, 3)]:
        ctx = context_k(n, k)
        built = {s.images for s in enumerate_aut(ctx)}
        found = set(oracle.magma_automorphisms(oracle.cayley(ctx)))
        assert built == found


def test_enumerate_aut_limit_and_determinism():
    ctx = context_k(3, 1)
    first = [s.images for s in enumerate_aut(ctx, limit=500)]
    assert len(first) == 500 == len(set(first))
    assert first == [s.images for s in enumerate_aut(ctx, limit=500)]
    assert all(is_automorphism(ctx, s) for s in first[::50])


def test_enumerate_aut_degenerate():
    with pytest.raises(DegenerateContext):
        next(enumerate_aut(context_k(2, 0)))


@pytest.mark.parametrize("n, k", [(2, 1), (2, 2), (3, 1), (3, 2), (3, 3)])
def test_tau_properties(n, k):
    assert invariants.tau_properties(context_k(n, k), random.Random(0)) == []


@pytest.mark.parametrize("n, k", [(2, 1), (3, 1), (3, 2), (3, 3)])
def test_semidirect_structure(n, k):
    assert invariants.semidirect_structure(context_k(n, k), random.Random(n * 10 + k), samples=30) == []


def test_normality_exhaustive_small():
    for n, k in [(2, 2), (3, 2), (3, 3)]:
        ctx = context_k(n, k)
        cps = [ClassPerm(tuple(p)) for p in itertools.product(
            *(list(itertools.permutations(range(len(c)))) for c in aut._classes(ctx)))]
        for t in aut.triples(ctx):
            s = tau(ctx, t)
            for cp in cps:
                conj = compose_aut(compose_aut(inverse_aut(s), pi(ctx, cp)), s)
                aut.class_perm_from_images(ctx, conj.images)


def test_rank_preserved_on_decomposables_by_oracle_automorphisms():
    for n, k in [(2, 1), (3, 2), (3, 3)]:
        ctx = context_k(n, k)
        elements = core.enumerate_all(n)
        for p in oracle.magma_automorphisms(oracle.cayley(ctx)):
            for i, a in enumerate(elements):
                if a.rank <= k:
                    assert elements[p[i]].rank == a.rank
