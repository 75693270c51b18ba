"""Theory-free verification: Cayley tables and a magma automorphism search.

Nothing in this subpackage imports the sandwich, congruence or aut
modules; the search engine sees nothing but the multiplication table.
"""

from .search import (
    GroupData,
    automorphism_group,
    count_automorphisms,
    invariant_partition,
    magma_automorphisms,
    magma_isomorphic,
)
from .table import HARD_CAP, CayleyTable, cayley, sandwich_table, size_cap

__all__ = [
    "CayleyTable",
    "GroupData",
    "HARD_CAP",
    "automorphism_group",
    "cayley",
    "count_automorphisms",
    "invariant_partition",
    "magma_automorphisms",
    "magma_isomorphic",
    "sandwich_table",
    "size_cap",
]
