"""Independent oracles shared by the test suite.

Everything here is deliberately written from scratch (sieve, brute-force
inverse, term-by-term rational summation) so that it exercises none of the
code paths under test.
"""

from __future__ import annotations

import math
from fractions import Fraction


def primes_upto(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, int(math.isqrt(n)) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(sieve[p * p :: p]))
    return [i for i, flag in enumerate(sieve) if flag]


def max_prime_power_product(hi: int) -> int:
    """Oracle for lcm(2..hi): product of the largest prime powers <= hi."""
    out = 1
    for p in primes_upto(hi):
        power = p
        while power * p <= hi:
            power *= p
        out *= power
    return out


def coprime_count(n: int) -> int:
    """#{a in [1, n) : gcd(a, n) = 1}; 0 for n = 1."""
    return sum(1 for a in range(1, n) if math.gcd(a, n) == 1)


def brute_inverse(a: int, r: int) -> int:
    if r == 1:
        return 0
    for x in range(r):
        if (a * x) % r == 1:
            return x
    raise ValueError(f"{a} not invertible mod {r}")


def l_bruteforce(r: int, a: int, m: int) -> Fraction:
    """Term-by-term rational evaluation of the defining sum."""
    if r == 1 or m <= 1:
        return Fraction(0)
    b = brute_inverse(a, r)
    total = Fraction(0)
    for k in range(1, m):
        res = (b * k) % r
        total += Fraction(res * (r - res), 2 * r)
    return total


def prop27_case_count(alpha_max: int) -> int:
    """Combinatorial size of the inequality scan's parameter box."""
    total = 0
    for alpha in range(3, alpha_max + 1):
        m_top = (alpha + 1) // 2
        if m_top < 2:
            continue
        total += coprime_count(alpha) * (alpha + 1) * (m_top - 1)
    return total
