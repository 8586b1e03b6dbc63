"""Cyclic quotient singularity types and baskets of them.

A type (r, a) stands for the quotient of affine 3-space by the cyclic group
of order r acting with weights (a, -a, 1).  A basket is a finite multiset of
such types; its members need not be actual singular points of any particular
variety, they only encode correction terms.  The correction a single type
adds at level m is the defining sum

    l((r, a), m) = sum_{k=1}^{m-1} res(b*k) * (r - res(b*k)) / (2*r)

where res() is the residue mod r and b is the inverse of a mod r.  The types
(r, a) and (r, r - a) produce identical corrections, so baskets store the
canonical representative with a <= r - a.  Smooth points (r = 1) are accepted
anywhere a type is accepted and contribute nothing.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator

from .exactmath import DomainError, mod_inverse

__all__ = [
    "QuotientSingularity",
    "Basket",
    "BasketParseError",
    "canonicalize",
    "contribution",
    "contribution_table",
    "contribution_closed_1",
    "index",
]


class BasketParseError(DomainError):
    """A basket string or JSON document failed to parse."""


@dataclass(frozen=True, order=True)
class QuotientSingularity:
    """A quotient singularity type (r, a): order r, weights (a, -a, 1)."""

    r: int
    a: int

    def __post_init__(self) -> None:
        if self.r < 1:
            raise DomainError(f"order r must be >= 1, got {self.r}")
        if self.r == 1:
            if self.a != 0:
                raise DomainError(f"a smooth point is (1, 0), got (1, {self.a})")
            return
        if not 0 <= self.a < self.r:
            raise DomainError(f"weight must satisfy 0 <= a < r, got ({self.r}, {self.a})")
        if math.gcd(self.a, self.r) != 1:
            raise DomainError(f"weight and order must be coprime, got ({self.r}, {self.a})")

    def canonical(self) -> "QuotientSingularity":
        return QuotientSingularity(self.r, min(self.a, self.r - self.a))

    def __str__(self) -> str:
        return f"{self.r},{self.a}"


def canonicalize(q: QuotientSingularity) -> QuotientSingularity:
    """Canonical representative (r, min(a, r - a)); idempotent."""
    return q.canonical()


@lru_cache(maxsize=None)
def _contribution_numerator(r: int, a: int, m: int) -> int:
    # Defining sum scaled by the fixed denominator 2r, as a plain integer.
    b = mod_inverse(a, r)
    total = 0
    for k in range(1, m):
        res = (b * k) % r
        total += res * (r - res)
    return total


def contribution(q: QuotientSingularity, m: int) -> Fraction:
    """Exact value of the defining sum l(q, m); 0 for m <= 1 or a smooth point."""
    if m < 0:
        raise DomainError(f"level m must be >= 0, got {m}")
    if q.r == 1 or m <= 1:
        return Fraction(0)
    return Fraction(_contribution_numerator(q.r, q.a, m), 2 * q.r)


def contribution_table(q: QuotientSingularity, m_max: int) -> list[Fraction]:
    """[l(q, 0), l(q, 1), ..., l(q, m_max)] in one O(m_max) pass."""
    if m_max < 0:
        raise DomainError(f"level m_max must be >= 0, got {m_max}")
    if q.r == 1:
        return [Fraction(0)] * (m_max + 1)
    out = [Fraction(0)] * min(m_max + 1, 2)
    if m_max < 2:
        return out
    b = mod_inverse(q.a, q.r)
    num = 0
    for m in range(2, m_max + 1):
        res = (b * (m - 1)) % q.r
        num += res * (q.r - res)
        out.append(Fraction(num, 2 * q.r))
    return out


def contribution_closed_1(r: int, m: int) -> Fraction:
    """Closed form of l((r, 1), m): no summation, exact for every r >= 1, m >= 0."""
    if r < 1:
        raise DomainError(f"order r must be >= 1, got {r}")
    if m < 0:
        raise DomainError(f"level m must be >= 0, got {m}")
    mbar = m % r
    whole = m // r
    return Fraction(mbar * (mbar - 1) * (3 * r + 1 - 2 * mbar), 12 * r) + Fraction(
        (r * r - 1) * whole, 12
    )


_ENTRY_RE = re.compile(r"^(?:(\d+)\*)?([+-]?\d+),([+-]?\d+)$")


class Basket:
    """Finite multiset of quotient singularity types, stored canonically.

    Entries are keyed by canonical type and held sorted by (r, a) with
    positive multiplicities; smooth points are normalized away, so the empty
    basket and a basket of smooth points compare equal.
    """

    __slots__ = ("_entries",)

    def __init__(self, items: Iterable[QuotientSingularity | tuple[int, int]] = ()):
        counts: dict[QuotientSingularity, int] = {}
        for item in items:
            sing = item if isinstance(item, QuotientSingularity) else QuotientSingularity(*item)
            sing = sing.canonical()
            if sing.r == 1:
                continue
            counts[sing] = counts.get(sing, 0) + 1
        self._entries = tuple(sorted(counts.items()))

    @classmethod
    def from_counts(
        cls, pairs: Iterable[tuple[QuotientSingularity | tuple[int, int], int]]
    ) -> "Basket":
        items: list[QuotientSingularity] = []
        for sing_like, count in pairs:
            if count < 1:
                raise DomainError(f"multiplicity must be >= 1, got {count}")
            sing = (
                sing_like
                if isinstance(sing_like, QuotientSingularity)
                else QuotientSingularity(*sing_like)
            )
            items.extend([sing] * count)
        return cls(items)

    @property
    def entries(self) -> tuple[tuple[QuotientSingularity, int], ...]:
        return self._entries

    @property
    def is_empty(self) -> bool:
        return not self._entries

    @property
    def total(self) -> int:
        """Total multiplicity."""
        return sum(count for _, count in self._entries)

    @property
    def max_r(self) -> int:
        return max((sing.r for sing, _ in self._entries), default=1)

    def index(self) -> int:
        """lcm of the orders present; 1 for the empty basket."""
        out = 1
        for sing, _ in self._entries:
            out = math.lcm(out, sing.r)
        return out

    def contribution_sum(self, m: int) -> Fraction:
        """Multiplicity-weighted sum of l(q, m) over the basket."""
        total = Fraction(0)
        for sing, count in self._entries:
            total += count * contribution(sing, m)
        return total

    def contribution_sum_table(self, m_max: int) -> list[Fraction]:
        totals = [Fraction(0)] * (m_max + 1)
        for sing, count in self._entries:
            for m, value in enumerate(contribution_table(sing, m_max)):
                totals[m] += count * value
        return totals

    def __add__(self, other: "Basket") -> "Basket":
        merged = list(self._entries) + list(other._entries)
        return Basket.from_counts(merged)

    def __iter__(self) -> Iterator[tuple[QuotientSingularity, int]]:
        return iter(self._entries)

    def __bool__(self) -> bool:
        return bool(self._entries)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Basket):
            return NotImplemented
        return self._entries == other._entries

    def __hash__(self) -> int:
        return hash(self._entries)

    def __repr__(self) -> str:
        return f"Basket.parse({self.to_text()!r})"

    def __str__(self) -> str:
        return self.to_text()

    def to_text(self) -> str:
        """Text syntax: semicolon-separated 'r,a' entries, 'k*r,a' when repeated."""
        parts = []
        for sing, count in self._entries:
            prefix = f"{count}*" if count > 1 else ""
            parts.append(f"{prefix}{sing.r},{sing.a}")
        return ";".join(parts)

    @classmethod
    def parse(cls, text: str) -> "Basket":
        """Parse the text syntax, e.g. '2,1;3*5,2;26,1'.  Empty string is empty."""
        text = text.strip()
        if not text:
            return cls()
        pairs: list[tuple[QuotientSingularity, int]] = []
        for raw in text.split(";"):
            entry = raw.strip()
            m = _ENTRY_RE.match(entry)
            if m is None:
                raise BasketParseError(f"malformed basket entry {entry!r}")
            count = int(m.group(1)) if m.group(1) else 1
            if count < 1:
                raise BasketParseError(f"basket entry {entry!r}: multiplicity must be >= 1")
            try:
                sing = QuotientSingularity(int(m.group(2)), int(m.group(3)))
            except DomainError as exc:
                raise BasketParseError(f"basket entry {entry!r}: {exc}") from exc
            pairs.append((sing, count))
        return cls.from_counts(pairs)

    def to_json_dict(self) -> dict:
        return {
            "basket": [
                {"r": sing.r, "a": sing.a, "count": count} for sing, count in self._entries
            ]
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "Basket":
        if not isinstance(data, dict) or "basket" not in data:
            raise BasketParseError("basket JSON must be an object with a 'basket' key")
        pairs: list[tuple[QuotientSingularity, int]] = []
        for row in data["basket"]:
            try:
                sing = QuotientSingularity(int(row["r"]), int(row["a"]))
                count = int(row.get("count", 1))
            except (KeyError, TypeError, ValueError) as exc:
                raise BasketParseError(f"malformed basket JSON entry {row!r}") from exc
            except DomainError as exc:
                raise BasketParseError(f"basket JSON entry {row!r}: {exc}") from exc
            if count < 1:
                raise BasketParseError(f"basket JSON entry {row!r}: multiplicity must be >= 1")
            pairs.append((sing, count))
        return cls.from_counts(pairs)


def index(b: Basket) -> int:
    """lcm of all orders r in the basket; 1 when empty."""
    return b.index()
