"""Rank-1 lattices for exact Chebyshev integration and reconstruction on lower sets."""

from .admissibility import (
    AliasEntry,
    AliasTable,
    LatticeConfig,
    Plan,
    Violation,
    aliasing_count_ck,
    check_chain,
    check_direct,
    first_violation,
    simplex_reduced_check_planA,
    table_extend,
)
from .cubature import ChebSeries, Rank1Lattice, character_sum, cubature, eval_cheb_basis, reconstruct, tent
from .index_sets import (
    IndexSet,
    LowerSet,
    SimplexSet,
    Weights,
    make_block,
    make_cross,
    make_hyperbolic,
    make_simplex,
    make_simplex_by_cardinality,
    make_simplex_iso,
    mirror,
    mirror_cardinality,
    mirror_simplex_cardinality,
    read_index_set,
    sum_sets,
    write_index_set,
)
from .search import (
    NotFoundError,
    SearchBounds,
    SearchResult,
    cbc_search,
    exhaustive_search,
    lower_bound,
    modulus_search,
    two_step,
    upper_bound,
    vector_search,
)

__version__ = "0.1.0"
