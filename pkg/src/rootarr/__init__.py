"""Exact-arithmetic root ideal arrangements.

Builds finite crystallographic root systems and their root posets,
enumerates order ideals, and classifies each ideal arrangement as
chain-peelable, supersolvable, line-closed and free of the two minimal bad
configurations, reporting exponent multisets along the way.
"""

from .rootsystem import (
    RootPoset,
    RootSystem,
    TypeLabel,
    build_root_system,
    format_root,
    inner_product,
    parse_root,
    rank2_subsystem,
    reflect,
    root_poset,
)
from .ideals import (
    BadIdealWitness,
    Ideal,
    SubsystemView,
    candidate_ab_pairs,
    contains_f4_bad_ideal,
    enumerate_ideals,
    find_star_ideal,
    g_set,
    is_path_root,
    principal_filter,
    restrict_without_g,
)
from .matroid import (
    Arrangement,
    Flat,
    characteristic_polynomial,
    closure,
    independent_sets,
    is_line_closed,
    rank,
    two_closure,
    two_flats,
)
from .classify import (
    ClassificationRecord,
    EquivalenceViolation,
    PartitionCertificate,
    chain_peeling,
    chain_peeling_greedy,
    classify_ideal,
    exponents,
    is_supersolvable_generic,
    is_supersolvable_rootideal,
    validate_chain_peeling,
    validate_supersolving,
)

__version__ = "0.1.0"

__all__ = [
    "TypeLabel",
    "RootSystem",
    "RootPoset",
    "build_root_system",
    "root_poset",
    "inner_product",
    "reflect",
    "rank2_subsystem",
    "parse_root",
    "format_root",
    "Ideal",
    "SubsystemView",
    "BadIdealWitness",
    "enumerate_ideals",
    "principal_filter",
    "g_set",
    "candidate_ab_pairs",
    "restrict_without_g",
    "find_star_ideal",
    "contains_f4_bad_ideal",
    "is_path_root",
    "Arrangement",
    "Flat",
    "closure",
    "rank",
    "two_flats",
    "independent_sets",
    "two_closure",
    "is_line_closed",
    "characteristic_polynomial",
    "PartitionCertificate",
    "ClassificationRecord",
    "EquivalenceViolation",
    "chain_peeling",
    "chain_peeling_greedy",
    "is_supersolvable_generic",
    "is_supersolvable_rootideal",
    "exponents",
    "classify_ideal",
    "validate_chain_peeling",
    "validate_supersolving",
    "__version__",
]
