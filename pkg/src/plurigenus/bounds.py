"""Explicit pluricanonical birationality bounds and the case analysis.

For a cap C >= 1 on the Euler characteristic the relevant constants are

    R  = lcm(2, 3, ..., 26C - 1)
    m1 = 18R + 1          (index-divides-R case)
    m2 = 143C + 5         (two-sections case, 11*(13C) + 5)
    m  = lcm(m1, m2)      (works in either case)

Every basket whose index does not divide R must contain an order r >= 26C,
because each order up to 26C - 1 divides R by construction; classify turns
that dichotomy into a verdict with the applicable bound.  All values are
arbitrary-precision: already for C = 2, R overflows 64-bit integers.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .basket import Basket
from .exactmath import DomainError, format_rat, lcm_range
from .formula import CanonicalInvariants, h0_ample

__all__ = [
    "BoundReport",
    "Case",
    "Classification",
    "SoundnessError",
    "ekl_bound",
    "kollar_bound",
    "chi_cap",
    "sections_lower_bound",
    "severi_bound",
    "classify",
]


class SoundnessError(RuntimeError):
    """An internal invariant of the case split failed; indicates a bug."""


@dataclass(frozen=True)
class BoundReport:
    """The constants (C, R, m1, m2, m) for one Euler characteristic cap."""

    C: int
    R: int
    m1: int
    m2: int
    m: int

    def to_json_dict(self) -> dict[str, str]:
        return {
            "C": str(self.C),
            "R": str(self.R),
            "m1": str(self.m1),
            "m2": str(self.m2),
            "m": str(self.m),
        }


class Case(enum.Enum):
    INDEX_DIVIDES_R = "Case1"
    TWO_SECTIONS = "Case2"


@dataclass(frozen=True)
class Classification:
    """Verdict of the case split with the applicable pluricanonical exponent.

    witness is the basket index in Case1 and a basket order r >= 26C in
    Case2.  h0_13c carries the exact section count h^0((13C)K) when full
    invariants were supplied (strict mode), else None.
    """

    case: Case
    witness: int
    bound: int
    h0_13c: Fraction | None = None

    def describe(self) -> str:
        return f"{self.case.value} bound={self.bound} witness={self.witness}"

    def to_json_dict(self) -> dict:
        out = {
            "case": self.case.value,
            "witness": str(self.witness),
            "bound": str(self.bound),
        }
        if self.h0_13c is not None:
            out["h0_13c"] = format_rat(self.h0_13c)
        return out


def ekl_bound(l: int) -> int:
    """18l + 1, birational for any multiple l of the canonical-model index."""
    if l < 1:
        raise DomainError(f"index multiple l must be >= 1, got {l}")
    return 18 * l + 1


def kollar_bound(l: int) -> int:
    """11l + 5, birational once lK has two independent sections."""
    if l < 1:
        raise DomainError(f"level l must be >= 1, got {l}")
    return 11 * l + 5


def chi_cap(h0: int, h1: int, h2: int, h3: int) -> int:
    """Cap on |chi(O)| from the four Hodge numbers h^0(Omega^i): their sum."""
    values = (h0, h1, h2, h3)
    if any(h < 0 for h in values):
        raise DomainError(f"Hodge numbers must be >= 0, got {values}")
    return sum(values)


def sections_lower_bound(C: int) -> Fraction:
    """(52C^2 - 15C - 1)/24, a lower bound for h^0((13C)K) in the second case."""
    if C < 1:
        raise DomainError(f"cap C must be >= 1, got {C}")
    return Fraction(52 * C * C - 15 * C - 1, 24)


@lru_cache(maxsize=None)
def _bound_report(C: int) -> BoundReport:
    R = lcm_range(2, 26 * C - 1)
    m1 = 18 * R + 1
    m2 = 143 * C + 5
    return BoundReport(C=C, R=R, m1=m1, m2=m2, m=math.lcm(m1, m2))


def severi_bound(C: int) -> BoundReport:
    """The constants (R, m1, m2, m) for all 3-folds with chi(O) <= C."""
    if C < 1:
        raise DomainError(f"cap C must be >= 1, got {C}")
    return _bound_report(C)


def _find_case2_witness(C: int, b: Basket) -> int:
    candidates = [sing.r for sing, _ in b.entries if sing.r >= 26 * C]
    if not candidates:
        raise SoundnessError(
            f"index does not divide R yet no basket order reaches {26 * C}: {b.to_text()!r}"
        )
    return min(candidates)


def classify(
    C: int, b: Basket, invariants: CanonicalInvariants | None = None
) -> Classification:
    """Case split for a basket under the cap C.

    The verdict is decided purely by divisibility: Case1 when index(b)
    divides R, Case2 otherwise (then some order r >= 26C exists and the
    smallest such order is reported as witness).  Supplying full
    CanonicalInvariants turns on strict mode: h^0((13C)K) is evaluated
    exactly, attached to the result, and required to be >= 2 in Case2.
    """
    report = severi_bound(C)
    h0 = None
    if invariants is not None:
        if invariants.basket != b:
            raise DomainError("strict mode: invariants carry a different basket")
        if invariants.chi > C:
            raise DomainError(
                f"strict mode: chi={invariants.chi} exceeds the cap C={C}"
            )
        h0 = h0_ample(invariants, 13 * C)
    idx = b.index()
    if report.R % idx == 0:
        return Classification(Case.INDEX_DIVIDES_R, witness=idx, bound=report.m1, h0_13c=h0)
    witness = _find_case2_witness(C, b)
    if h0 is not None and h0 < 2:
        raise SoundnessError(
            f"two-sections case must have h0 >= 2, got {h0} for {b.to_text()!r}"
        )
    return Classification(Case.TWO_SECTIONS, witness=witness, bound=report.m2, h0_13c=h0)
