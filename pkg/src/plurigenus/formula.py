"""Euler characteristic of pluricanonical sheaves from (K^3, chi, basket).

The evaluator computes, exactly,

    chi(mK) = (1/12)(2m-1)m(m-1) K^3 - (2m-1) chi + sum over basket of l(Q, m)

for every m >= 0.  At m = 0 and m = 1 the cubic term and the basket sum
vanish and the value is chi and -chi; these endpoints double as structural
self-tests.  Identifying chi(mK) with the section count h^0(mK) additionally
needs m >= 2 and an ample canonical divisor (k3 > 0), which is what
h0_ample asserts; the plain evaluator makes no such claim and is also happy
to produce non-integral values for invariant combinations no variety
realizes (integrality_check reports those).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .basket import Basket
from .exactmath import DomainError, format_rat

__all__ = [
    "CanonicalInvariants",
    "chi_mK",
    "h0_ample",
    "integrality_check",
    "plurigenus_table",
    "table_to_tsv",
    "table_to_json_dict",
]


@dataclass(frozen=True)
class CanonicalInvariants:
    """(K^3, chi(O), basket): the full input to the pluricanonical evaluator."""

    k3: Fraction
    chi: int
    basket: Basket

    def __post_init__(self) -> None:
        object.__setattr__(self, "k3", Fraction(self.k3))
        if not isinstance(self.chi, int):
            raise DomainError(f"chi must be an integer, got {self.chi!r}")
        if not isinstance(self.basket, Basket):
            raise DomainError("basket must be a Basket")


def chi_mK(inv: CanonicalInvariants, m: int) -> Fraction:
    """Exact chi(mK) for m >= 0."""
    if m < 0:
        raise DomainError(f"level m must be >= 0, got {m}")
    lead = Fraction((2 * m - 1) * m * (m - 1), 12)
    return lead * inv.k3 - (2 * m - 1) * inv.chi + inv.basket.contribution_sum(m)


def h0_ample(inv: CanonicalInvariants, m: int) -> Fraction:
    """chi(mK), asserted equal to h^0(mK) for m >= 2 on an ample canonical model."""
    if m < 2:
        raise DomainError(f"section count needs m >= 2 (vanishing), got {m}")
    if inv.k3 <= 0:
        raise DomainError(f"section count needs k3 > 0 (ample), got {inv.k3}")
    return chi_mK(inv, m)


def plurigenus_table(inv: CanonicalInvariants, m_max: int) -> list[tuple[int, Fraction]]:
    """[(m, chi(mK)) for m in 0..m_max]."""
    if m_max < 0:
        return []
    sums = inv.basket.contribution_sum_table(m_max)
    rows = []
    for m in range(m_max + 1):
        lead = Fraction((2 * m - 1) * m * (m - 1), 12)
        rows.append((m, lead * inv.k3 - (2 * m - 1) * inv.chi + sums[m]))
    return rows


def integrality_check(inv: CanonicalInvariants, m_max: int) -> list[int]:
    """All m in [0, m_max] where chi(mK) is non-integral; empty means consistent."""
    return [m for m, value in plurigenus_table(inv, m_max) if value.denominator != 1]


def table_to_tsv(rows: list[tuple[int, Fraction]]) -> str:
    return "\n".join(f"{m}\t{format_rat(value)}" for m, value in rows)


def table_to_json_dict(rows: list[tuple[int, Fraction]]) -> dict:
    return {"table": [{"m": m, "value": format_rat(value)} for m, value in rows]}
