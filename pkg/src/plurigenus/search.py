"""Exhaustive verifiers, basket enumeration, and the inverse invariant search.

The two verifiers are regression oracles over finite parameter boxes: the
closed-form consistency scan and the contribution inequality scan.  Both
report every violating parameter tuple with exact left/right values, count
the full combinatorial range, and can split the outer range across worker
threads; merged results are identical to a sequential run.  Array backends
(see plurigenus.kernels) only ever produce candidate hits, which are
re-verified here in exact rational arithmetic before being reported.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator, Sequence

from . import kernels
from .basket import (
    Basket,
    QuotientSingularity,
    contribution,
    contribution_closed_1,
    contribution_table,
)
from .exactmath import DomainError, format_rat
from .formula import CanonicalInvariants, chi_mK

__all__ = [
    "Violation",
    "VerifyReport",
    "Residual",
    "FitResult",
    "verify_prop26",
    "verify_prop27",
    "enumerate_baskets",
    "fit_invariants",
    "match_baskets",
]


@dataclass(frozen=True)
class Violation:
    params: dict
    lhs: Fraction
    rhs: Fraction

    def to_json_dict(self) -> dict:
        return {"params": dict(self.params), "lhs": format_rat(self.lhs), "rhs": format_rat(self.rhs)}


@dataclass
class VerifyReport:
    description: str
    cases: int
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json_dict(self) -> dict:
        return {
            "description": self.description,
            "cases": self.cases,
            "violations": [v.to_json_dict() for v in self.violations],
        }


@dataclass(frozen=True)
class Residual:
    m: int
    expected: Fraction
    got: Fraction

    def to_json_dict(self) -> dict:
        return {"m": self.m, "expected": format_rat(self.expected), "got": format_rat(self.got)}


@dataclass
class FitResult:
    k3: Fraction
    residuals: list[Residual] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.residuals

    def to_json_dict(self) -> dict:
        return {"k3": format_rat(self.k3), "residuals": [r.to_json_dict() for r in self.residuals]}


def _split_range(lo: int, hi: int, workers: int) -> list[tuple[int, int]]:
    if hi < lo:
        return []
    span = hi - lo + 1
    blocks = max(1, min(workers, span))
    size, extra = divmod(span, blocks)
    out = []
    start = lo
    for i in range(blocks):
        stop = start + size - 1 + (1 if i < extra else 0)
        out.append((start, stop))
        start = stop + 1
    return out


def _run_blocks(fn: Callable, blocks: Sequence[tuple[int, int]], workers: int) -> list:
    if workers <= 1 or len(blocks) <= 1:
        return [fn(block) for block in blocks]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, blocks))


def _degree_one(r: int) -> QuotientSingularity:
    return QuotientSingularity(r, 1) if r > 1 else QuotientSingularity(1, 0)


def _prop26_block_python(r_lo: int, r_hi: int, m_max: int) -> list[tuple[int, int]]:
    hits = []
    for r in range(r_lo, r_hi + 1):
        table = contribution_table(_degree_one(r), m_max)
        for m in range(m_max + 1):
            if table[m] != contribution_closed_1(r, m):
                hits.append((r, m))
    return hits


def verify_prop26(
    r_max: int, m_max: int, backend: str | None = None, workers: int = 1
) -> VerifyReport:
    """Compare the closed form for (r, 1) against the defining sum on a box.

    Checks every r in [1, r_max] and m in [0, m_max]; each mismatch is
    reported with both exact values.
    """
    if r_max < 1:
        raise DomainError(f"r_max must be >= 1, got {r_max}")
    if m_max < 0:
        raise DomainError(f"m_max must be >= 0, got {m_max}")
    backend = kernels.resolve_backend(backend)
    if backend != "python" and not kernels.prop26_int64_safe(r_max, m_max):
        backend = "python"

    def scan(block: tuple[int, int]) -> list[tuple[int, int]]:
        lo, hi = block
        if backend == "python":
            return _prop26_block_python(lo, hi, m_max)
        hits, complete = kernels.prop26_scan(lo, hi, m_max, backend)
        if not complete:
            return _prop26_block_python(lo, hi, m_max)
        return hits

    violations = []
    for hits in _run_blocks(scan, _split_range(1, r_max, workers), workers):
        for r, m in hits:
            lhs = contribution(_degree_one(r), m)
            rhs = contribution_closed_1(r, m)
            if lhs != rhs:
                violations.append(Violation({"r": r, "m": m}, lhs, rhs))
    return VerifyReport(
        description=(
            f"closed form vs defining sum for (r,1): r in [1,{r_max}], m in [0,{m_max}]"
        ),
        cases=r_max * (m_max + 1),
        violations=violations,
    )


def _reference_value(beta: int, m: int) -> Fraction:
    # the (beta, 1) comparison value; beta in {0, 1} means no singularity
    if beta < 2:
        return Fraction(0)
    return contribution(QuotientSingularity(beta, 1), m)


def _prop27_block_python(a_lo: int, a_hi: int) -> tuple[int, list[tuple[int, int, int, int]]]:
    cases = 0
    hits = []
    m_hi = (a_hi + 1) // 2
    ref: dict[int, list[Fraction]] = {}
    for beta in range(2, a_hi + 1):
        ref[beta] = contribution_table(QuotientSingularity(beta, 1), m_hi)
    zero = [Fraction(0)] * (m_hi + 1)
    for alpha in range(max(a_lo, 3), a_hi + 1):
        m_top = (alpha + 1) // 2
        if m_top < 2:
            continue
        for a in range(1, alpha):
            if math.gcd(a, alpha) != 1:
                continue
            lhs = contribution_table(QuotientSingularity(alpha, a), m_top)
            for beta in range(alpha + 1):
                rhs = ref.get(beta, zero)
                for m in range(2, m_top + 1):
                    cases += 1
                    if lhs[m] < rhs[m]:
                        hits.append((alpha, a, beta, m))
    return cases, hits


def verify_prop27(alpha_max: int, backend: str | None = None, workers: int = 1) -> VerifyReport:
    """Scan the contribution inequality over its full admissible box.

    For every alpha in [1, alpha_max], every weight a coprime to alpha,
    every beta in [0, alpha] and every level 2 <= m <= (alpha + 1) // 2,
    check that the (alpha, a) contribution is at least the (beta, 1) one
    (zero for beta in {0, 1}).
    """
    if alpha_max < 1:
        raise DomainError(f"alpha_max must be >= 1, got {alpha_max}")
    backend = kernels.resolve_backend(backend)
    if backend != "python" and not kernels.prop27_int64_safe(alpha_max):
        backend = "python"

    def scan(block: tuple[int, int]) -> tuple[int, list[tuple[int, int, int, int]]]:
        lo, hi = block
        if backend == "python":
            return _prop27_block_python(lo, hi)
        cases, hits, complete = kernels.prop27_scan(lo, hi, backend)
        if not complete:
            return _prop27_block_python(lo, hi)
        return cases, hits

    cases = 0
    violations = []
    for block_cases, hits in _run_blocks(scan, _split_range(1, alpha_max, workers), workers):
        cases += block_cases
        for alpha, a, beta, m in hits:
            lhs = contribution(QuotientSingularity(alpha, a), m)
            rhs = _reference_value(beta, m)
            if lhs < rhs:
                violations.append(Violation({"alpha": alpha, "a": a, "beta": beta, "m": m}, lhs, rhs))
    return VerifyReport(
        description=f"contribution inequality: alpha in [1,{alpha_max}], m in [2,(alpha+1)//2]",
        cases=cases,
        violations=violations,
    )


def enumerate_baskets(r_max: int, n_max: int) -> Iterator[Basket]:
    """Every basket with orders <= r_max and total multiplicity <= n_max.

    Emitted in lexicographic order of the sorted entry tuple (each basket
    immediately followed by its extensions), starting with the empty basket.
    Deterministic and duplicate-free.
    """
    if r_max < 2:
        raise DomainError(f"r_max must be >= 2, got {r_max}")
    if n_max < 0:
        raise DomainError(f"n_max must be >= 0, got {n_max}")
    types = [
        QuotientSingularity(r, a)
        for r in range(2, r_max + 1)
        for a in range(1, r // 2 + 1)
        if math.gcd(a, r) == 1
    ]

    def extend(start: int, stack: list[QuotientSingularity]) -> Iterator[Basket]:
        yield Basket(stack)
        if len(stack) == n_max:
            return
        for i in range(start, len(types)):
            stack.append(types[i])
            yield from extend(i, stack)
            stack.pop()

    return extend(0, [])


def _pivot_sample(samples: Sequence[tuple[int, int]]) -> tuple[int, int]:
    if not samples:
        raise DomainError("at least one sample with m >= 2 is required")
    for m, _ in samples:
        if m < 0:
            raise DomainError(f"sample level must be >= 0, got {m}")
    for m, p in samples:
        if m >= 2:
            return m, p
    raise DomainError("no sample has m >= 2; the K^3 coefficient vanishes below that")


def fit_invariants(chi: int, b: Basket, samples: Sequence[tuple[int, int]]) -> FitResult:
    """Solve K^3 from the first sample with m >= 2, then recheck every sample.

    The evaluator is affine-linear in K^3 with coefficient (2m-1)m(m-1)/12,
    which is nonzero exactly for m >= 2; all arithmetic is exact, so a
    nonempty residual list means the samples are genuinely inconsistent.
    """
    m0, p0 = _pivot_sample(samples)
    coeff = Fraction((2 * m0 - 1) * m0 * (m0 - 1), 12)
    k3 = (Fraction(p0) + (2 * m0 - 1) * chi - b.contribution_sum(m0)) / coeff
    inv = CanonicalInvariants(k3, chi, b)
    residuals = []
    for m, p in samples:
        got = chi_mK(inv, m)
        if got != Fraction(p):
            residuals.append(Residual(m, Fraction(p), got))
    return FitResult(k3, residuals)


def match_baskets(
    chi: int,
    samples: Sequence[tuple[int, int]],
    r_max: int,
    n_max: int,
    workers: int = 1,
) -> list[tuple[Basket, Fraction]]:
    """All (basket, K^3) pairs within bounds that reproduce the samples exactly.

    Equivalent to running fit_invariants over enumerate_baskets and keeping
    every candidate with no residuals, K^3 > 0, and integral chi(mK) for all
    m up to the largest sampled level (checked by a test); the inner loop
    shares contribution tables across candidates and stops at the first
    failed sample.  Results follow the enumeration order.
    """
    m0, p0 = _pivot_sample(samples)
    m_hi = max(m for m, _ in samples)
    lead = [Fraction((2 * m - 1) * m * (m - 1), 12) for m in range(m_hi + 1)]
    checks = [(m, Fraction(p)) for m, p in samples]
    type_tables: dict[QuotientSingularity, list[Fraction]] = {}

    def sums_for(b: Basket) -> list[Fraction]:
        out = [Fraction(0)] * (m_hi + 1)
        for sing, count in b.entries:
            table = type_tables.get(sing)
            if table is None:
                table = contribution_table(sing, m_hi)
                type_tables[sing] = table
            for m in range(2, m_hi + 1):
                out[m] += count * table[m]
        return out

    def evaluate(b: Basket) -> tuple[Basket, Fraction] | None:
        sums = sums_for(b)
        k3 = (Fraction(p0) + (2 * m0 - 1) * chi - sums[m0]) / lead[m0]
        if k3 <= 0:
            return None
        for m, p in checks:
            if lead[m] * k3 - (2 * m - 1) * chi + sums[m] != p:
                return None
        for m in range(m_hi + 1):
            if (lead[m] * k3 - (2 * m - 1) * chi + sums[m]).denominator != 1:
                return None
        return (b, k3)

    candidates = enumerate_baskets(r_max, n_max)
    if workers <= 1:
        results = [evaluate(b) for b in candidates]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(evaluate, candidates))
    return [hit for hit in results if hit is not None]
