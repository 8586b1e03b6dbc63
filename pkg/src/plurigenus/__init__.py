"""Exact-arithmetic invariants of canonical 3-folds.

Computes pluricanonical Euler characteristics from (K^3, chi(O), basket),
singularity corrections and indices, explicit birationality bounds, and the
inverse search fitting invariants to plurigenus data.  All arithmetic is
arbitrary-precision integer/rational; nothing is approximated.
"""

from .basket import (
    Basket,
    BasketParseError,
    QuotientSingularity,
    canonicalize,
    contribution,
    contribution_closed_1,
    contribution_table,
)
from .bounds import (
    BoundReport,
    Case,
    Classification,
    SoundnessError,
    chi_cap,
    classify,
    ekl_bound,
    kollar_bound,
    sections_lower_bound,
    severi_bound,
)
from .exactmath import (
    DomainError,
    format_rat,
    lcm_range,
    mod_inverse,
    parse_rat,
    residue,
)
from .formula import (
    CanonicalInvariants,
    chi_mK,
    h0_ample,
    integrality_check,
    plurigenus_table,
)
from .search import (
    FitResult,
    VerifyReport,
    Violation,
    enumerate_baskets,
    fit_invariants,
    match_baskets,
    verify_prop26,
    verify_prop27,
)

__version__ = "0.1.0"

__all__ = [
    "Basket",
    "BasketParseError",
    "BoundReport",
    "CanonicalInvariants",
    "Case",
    "Classification",
    "DomainError",
    "FitResult",
    "QuotientSingularity",
    "SoundnessError",
    "VerifyReport",
    "Violation",
    "canonicalize",
    "chi_cap",
    "chi_mK",
    "classify",
    "contribution",
    "contribution_closed_1",
    "contribution_table",
    "ekl_bound",
    "enumerate_baskets",
    "fit_invariants",
    "format_rat",
    "h0_ample",
    "integrality_check",
    "kollar_bound",
    "lcm_range",
    "match_baskets",
    "mod_inverse",
    "parse_rat",
    "plurigenus_table",
    "residue",
    "sections_lower_bound",
    "severi_bound",
    "verify_prop26",
    "verify_prop27",
]
