"""Independent arithmetic progressions in sparse graphs on [n]."""

__version__ = "0.1.0"

from .apfamily import DifferenceFamily, FamilyKind, Progression, aps_containing_pair, count_aps, enumerate_aps
from .extremal import Outcome, SearchBudget, sr_exact
from .finder import (
    DEFAULT_EPSILON,
    FinderConfig,
    Witness,
    certified_edge_budget,
    find_independent_ap,
    find_rainbow_ap,
    find_unmapped_ap,
    n0_upper_bound,
    sr_upper_bound,
    tk_upper_bound,
)
from .graphcore import Coloring, FixedPointMode, IntGraph, PermutationMap, from_coloring, from_edge_list, from_permutation
from .sieve import SieveTable, build_sieve, coprime_differences, phi_count, prime_count

__all__ = [
    "Coloring", "DEFAULT_EPSILON", "DifferenceFamily", "FamilyKind", "FinderConfig", "FixedPointMode",
    "IntGraph", "Outcome", "PermutationMap", "Progression", "SearchBudget", "SieveTable", "Witness",
    "aps_containing_pair", "build_sieve", "certified_edge_budget", "coprime_differences", "count_aps",
    "enumerate_aps", "find_independent_ap", "find_rainbow_ap", "find_unmapped_ap", "from_coloring",
    "from_edge_list", "from_permutation", "n0_upper_bound", "phi_count", "prime_count", "sr_exact",
    "sr_upper_bound", "tk_upper_bound",
]
