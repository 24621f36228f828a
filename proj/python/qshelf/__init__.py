"""Exact truncated q-series for the shelf construction.

Closed forms for the official and ghost families, partition-count oracles,
h-matrix entries and limits, the two-variable dictionary, and the full
verification suites, all over arbitrary-precision integers.
"""

from ._qshelf import (
    count_ghost,
    count_h,
    count_official,
    dictionary_series,
    dictionary_terms,
    h_entry,
    h_limit,
    product_side,
    series,
    theta_quotient,
    verify_counts,
    verify_dictionary,
    verify_edge_match,
    verify_eh,
    verify_ghost_counts,
    verify_h_limit,
    verify_hcomb,
    verify_jacobi,
    verify_matrix,
    verify_products,
    verify_recursion,
)

__all__ = [
    "count_ghost",
    "count_h",
    "count_official",
    "dictionary_series",
    "dictionary_terms",
    "h_entry",
    "h_limit",
    "product_side",
    "series",
    "theta_quotient",
    "verify_counts",
    "verify_dictionary",
    "verify_edge_match",
    "verify_eh",
    "verify_ghost_counts",
    "verify_h_limit",
    "verify_hcomb",
    "verify_jacobi",
    "verify_matrix",
    "verify_products",
    "verify_recursion",
]
