import itertools

import pytest

from sandwich_is import core
from sandwich_is.sandwich import context_k


def brute_force_universe(n):
    """All partial injections on {1..n}, found by filtering every map into {0..n}."""
    found = []
    for images in itertools.product(range(n + 1), repeat=n):
        defined = [y for y in images if y]
        if len(defined) == len(set(defined)):
            found.append(core.PartialInjection(n, images))
    return found


def brute_force_automorphisms(table):
    """Every permutation p with p[t[i][j]] == t[p[i]][p[j]], by trying all of them."""
    m = len(table)
    rows = [list(r) for r in table]
    out = []
    for p in itertools.permutations(range(m)):
        if all(p[rows[i][j]] == rows[p[i]][p[j]] for i in range(m) for j in range(m)):
            out.append(p)
    return out


SMALL_CONTEXTS = [(n, k) for n in (1, 2, 3) for k in range(n + 1)]


@pytest.fixture(params=SMALL_CONTEXTS, ids=lambda nk: f"n{nk[0]}k{nk[1]}")
def small_ctx(request):
    return context_k(*request.param)


@pytest.fixture
def ctx31():
    return context_k(3, 1)


# one line per acceptance criterion, filled in by tests/test_acceptance.py
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for number in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[number])
