"""Oracle counts at n = 4 (|IS_4| = 209). Deselect with ``-m "not slow"``."""

import pytest

from sandwich_is import aut, oracle
from sandwich_is.sandwich import context_k


@pytest.mark.slow
@pytest.mark.parametrize("k", [0, 1, 2, 3, 4])
def test_oracle_count_n4(k):
    ctx = context_k(4, k)
    assert oracle.count_automorphisms(oracle.cayley(ctx)) == aut.aut_order(ctx)
