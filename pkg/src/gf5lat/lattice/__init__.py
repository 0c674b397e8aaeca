"""Lattices over the integers: Construction A, reduction, enumeration,
shadows, neighbors and isometry testing."""

from gf5lat.lattice.core import (
    IntegerLattice,
    InvariantPair,
    ShortVectorSet,
    construction_a,
    count_vectors,
    inv_pair,
    invariant_distinct,
    kissing_number,
    lll_reduce,
    minimum_norm,
    short_vectors,
)

__all__ = [
    "IntegerLattice",
    "InvariantPair",
    "ShortVectorSet",
    "construction_a",
    "count_vectors",
    "inv_pair",
    "invariant_distinct",
    "kissing_number",
    "lll_reduce",
    "minimum_norm",
    "short_vectors",
]
