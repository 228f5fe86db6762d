"""Toolkit for sets with more sums than differences (sum-dominant / MSTD sets)."""

from .setcore import (
    Classification,
    DiffStats,
    FiniteSet,
    GapForm,
    SetParseError,
    Verdict,
    classify,
    contains_ap,
    diff_stats,
    diffset,
    is_symmetric,
    normalize_affine,
    parse_roster,
    parse_set,
    parse_spohn,
    sumset,
    to_spohn,
)

__version__ = "0.1.0"
