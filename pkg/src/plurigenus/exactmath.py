"""Exact integer and rational arithmetic helpers.

Every quantity in this package is a Python int (arbitrary precision) or a
fractions.Fraction (always lowest terms, positive denominator).  Nothing in
the computation pipeline ever touches binary floating point: the headline
constants overflow 64-bit integers already for small inputs, and every
downstream comparison is an exact equality or an exact inequality.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import reduce

__all__ = [
    "DomainError",
    "lcm_range",
    "mod_inverse",
    "residue",
    "format_rat",
    "parse_rat",
    "parse_int",
]


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


def lcm_range(lo: int, hi: int) -> int:
    """Least common multiple of all integers in [lo, hi], for 2 <= lo <= hi."""
    if lo < 2 or hi < lo:
        raise DomainError(f"lcm_range requires 2 <= lo <= hi, got ({lo}, {hi})")
    return reduce(math.lcm, range(lo, hi + 1))


def mod_inverse(a: int, r: int) -> int:
    """The unique b in [0, r) with a*b = 1 (mod r); 0 when r = 1."""
    if r < 1:
        raise DomainError(f"modulus must be positive, got {r}")
    try:
        return pow(a, -1, r)
    except ValueError as exc:
        raise DomainError(f"{a} is not invertible modulo {r}") from exc


def residue(j: int, r: int) -> int:
    """Smallest nonnegative residue of j modulo r, also for negative j."""
    if r < 1:
        raise DomainError(f"modulus must be positive, got {r}")
    return j % r


def format_rat(value: Fraction | int) -> str:
    """Render a rational as 'p/q', or as a bare decimal string when integral."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


_RAT_RE = re.compile(r"^([+-]?\d+)(?:/([1-9]\d*))?$")
_INT_RE = re.compile(r"^[+-]?\d+$")


def parse_rat(text: str) -> Fraction:
    """Parse 'p/q' or a bare integer string; rejects anything else (e.g. '1.5')."""
    m = _RAT_RE.match(text.strip())
    if m is None:
        raise DomainError(f"not a rational in p/q form: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) else 1
    return Fraction(num, den)


def parse_int(text: str) -> int:
    if not _INT_RE.match(text.strip()):
        raise DomainError(f"not an integer: {text!r}")
    return int(text)
