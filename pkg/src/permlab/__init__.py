"""Enumeration and exact-series verification of pattern-avoiding permutation classes."""

from permlab.perms import (
    Perm,
    ParseError,
    avoids_all,
    bond_count,
    contains,
    deflate,
    delete_lr_maxima,
    direct_sum,
    extraction,
    horizontal_gaps,
    inflate,
    intervals,
    is_simple,
    leading_maxima_count,
    lr_maxima,
    lr_minima,
    parse_permutation,
    perm,
    perm_to_text,
    skew_sum,
    standardize,
    strip_leading_maxima,
)

__all__ = [
    "Perm",
    "ParseError",
    "avoids_all",
    "bond_count",
    "contains",
    "deflate",
    "delete_lr_maxima",
    "direct_sum",
    "extraction",
    "horizontal_gaps",
    "inflate",
    "intervals",
    "is_simple",
    "leading_maxima_count",
    "lr_maxima",
    "lr_minima",
    "parse_permutation",
    "perm",
    "perm_to_text",
    "skew_sum",
    "standardize",
    "strip_leading_maxima",
]
