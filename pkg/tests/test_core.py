import itertools
import json
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sandwich_is import core
from sandwich_is.core import compose, inverse, make, parse, restrict
from sandwich_is.errors import (
    CapExceeded,
    DuplicateDomain,
    DuplicateImage,
    OutOfRange,
    ParseError,
    SizeMismatch,
)

from conftest import brute_force_universe


@st.composite
def partial_injections(draw, n=None):
    if n is None:
        n = draw(st.integers(1, 5))
    dom = draw(st.lists(st.integers(1, n), unique=True, max_size=n))
    image = draw(st.permutations(range(1, n + 1)))[: len(dom)]
    return make(n, zip(dom, image))


@st.composite
def same_n(draw, count):
    n = draw(st.integers(1, 5))
    return [draw(partial_injections(n)) for _ in range(count)]


class TestMake:
    def test_basic(self):
        a = make(3, [(1, 2), (2, 1)])
        assert a.dom == {1, 2} and a.im == {1, 2} and a.rank == 2

    def test_empty(self):
        a = make(3, [])
        assert a.rank == 0 and str(a) == ""

    def test_duplicate_image(self):
        with pytest.raises(DuplicateImage) as info:
            make(2, [(1, 2), (2, 2)])
        assert info.value.coordinate == 2

    def test_duplicate_domain(self):
        with pytest.raises(DuplicateDomain) as info:
            make(3, [(1, 2), (1, 3)])
        assert info.value.coordinate == 1

    @pytest.mark.parametrize("pair, bad", [((0, 1), 0), ((1, 4), 4)])
    def test_out_of_range(self, pair, bad):
        with pytest.raises(OutOfRange) as info:
            make(3, [pair])
        assert info.value.coordinate == bad

    def test_pairs_sorted(self):
        assert make(3, [(3, 1), (1, 2)]).pairs == ((1, 2), (3, 1))


def test_compose_chain():
    assert compose(make(3, [(1, 2)]), make(3, [(2, 3)])) == make(3, [(1, 3)])


def test_compose_drops_points():
    # a = (1>2, 2>1), b = (1>3): only x = 2 has a(x) in dom(b)
    assert compose(make(3, [(1, 2), (2, 1)]), make(3, [(1, 3)])) == make(3, [(2, 3)])


def test_compose_size_mismatch():
    with pytest.raises(SizeMismatch):
        compose(core.identity(2), core.identity(3))


def test_inverse_rank_restrict():
    assert inverse(make(3, [(1, 3), (2, 1)])) == make(3, [(3, 1), (1, 2)])
    assert core.rank(core.empty(4)) == 0
    assert restrict(make(3, [(1, 2), (2, 1), (3, 3)]), {1, 3}) == make(3, [(1, 2), (3, 3)])


def test_canonical_string_and_parse():
    a = make(3, [(1, 3), (2, 1)])
    assert core.to_canonical_string(a) == "1>3,2>1"
    assert parse("", 3) == core.empty(3)
    with pytest.raises(DuplicateImage):
        parse("2>2,1>2", 2)


@pytest.mark.parametrize("text", ["1>", "1-2", "x>1", "1>2,,"])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse(text, 3)


def test_json_round_trip():
    a = make(4, [(4, 1), (2, 3)])
    data = a.to_json()
    assert data == {"n": 4, "pairs": [[2, 3], [4, 1]]}
    assert core.from_json(json.dumps(data)) == a


@pytest.mark.parametrize("n, expected", [(1, 2), (2, 7), (3, 34), (4, 209)])
def test_enumerate_counts(n, expected):
    elements = core.enumerate_all(n)
    assert len(elements) == expected
    assert expected == sum(math.comb(n, i) ** 2 * math.factorial(i) for i in range(n + 1))
    assert set(elements) == set(brute_force_universe(n))


def test_enumerate_order():
    assert core.enumerate_all(1) == (core.empty(1), core.identity(1))
    elements = core.enumerate_all(3)
    keys = [a.sort_key() for a in elements]
    assert keys == sorted(keys)
    assert all(core.index_of(a) == i for i, a in enumerate(elements))


def test_enumerate_cap():
    with pytest.raises(CapExceeded):
        core.enumerate_all(core.MAX_ENUMERATE_N + 1)


def test_index_lookup_consistent():
    n = 3
    mat = core.image_matrix(n)
    codes = mat @ [(n + 1) ** i for i in range(n)]
    assert list(core.index_lookup(n)[codes]) == list(range(len(mat)))


def test_associativity_exhaustive_n2():
    elements = core.enumerate_all(2)
    for a, b, c in itertools.product(elements, repeat=3):
        assert compose(compose(a, b), c) == compose(a, compose(b, c))


@settings(max_examples=300)
@given(same_n(3))
def test_associativity(triple):
    a, b, c = triple
    assert compose(compose(a, b), c) == compose(a, compose(b, c))


@given(partial_injections())
def test_inverse_law(a):
    assert compose(a, inverse(a)) == core.identity(a.n, a.dom)
    assert inverse(inverse(a)) == a


@given(same_n(2))
def test_rank_bound(pair):
    a, b = pair
    assert compose(a, b).rank <= min(a.rank, b.rank)


@given(partial_injections())
def test_parse_round_trip(a):
    assert parse(str(a), a.n) == a
    assert a in set(core.enumerate_all(a.n))


@given(partial_injections())
def test_identity_is_neutral(a):
    ident = core.identity(a.n)
    assert compose(a, ident) == a == compose(ident, a)
