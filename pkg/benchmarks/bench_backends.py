#!/usr/bin/env python3
"""Compare the verifier scan backends (numba JIT, numpy, exact python).

All backends must return identical reports; this script asserts that, then
prints the best-of-N wall time per backend in integer nanoseconds together
with the slowdown relative to the fastest backend.  The numba kernels are
warmed up first so JIT compilation is not billed to the measurement.

Typical invocations:

    python benchmarks/bench_backends.py
    python benchmarks/bench_backends.py --r-max 400 --m-max 1200 --alpha-max 200
    python benchmarks/bench_backends.py --skip-python --repeat 5
"""

from __future__ import annotations

import argparse
from time import perf_counter_ns

from plurigenus.kernels import available_backends
from plurigenus.search import verify_prop26, verify_prop27


def best_of(fn, repeat):
    best = None
    result = None
    for _ in range(repeat):
        start = perf_counter_ns()
        result = fn()
        elapsed = perf_counter_ns() - start
        if best is None or elapsed < best:
            best = elapsed
    return best, result


def print_table(title, cases, rows):
    print(f"{title}  ({cases} cases)")
    fastest = min(ns for _, ns in rows)
    for backend, ns in rows:
        rel = ns * 100 // fastest
        print(f"  {backend:<8} {ns:>14} ns   {ns // 10**6:>8} ms   {rel:>6}% of fastest")
    print()


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--r-max", type=int, default=200)
    parser.add_argument("--m-max", type=int, default=600)
    parser.add_argument("--alpha-max", type=int, default=120)
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument(
        "--skip-python",
        action="store_true",
        help="skip the exact reference path (slow at large ranges)",
    )
    args = parser.parse_args()

    backends = list(available_backends())
    if args.skip_python:
        backends.remove("python")
    if "numba" in backends:
        verify_prop26(4, 4, backend="numba")
        verify_prop27(6, backend="numba")

    scans = [
        (
            f"prop26 scan, r <= {args.r_max}, m <= {args.m_max}",
            lambda b: verify_prop26(args.r_max, args.m_max, backend=b),
        ),
        (
            f"prop27 scan, alpha <= {args.alpha_max}",
            lambda b: verify_prop27(args.alpha_max, backend=b),
        ),
    ]
    for title, make in scans:
        rows = []
        reports = []
        for backend in backends:
            ns, report = best_of(lambda: make(backend), args.repeat)
            rows.append((backend, ns))
            reports.append(report)
        for report in reports[1:]:
            assert report == reports[0], "backends disagree"
        assert reports[0].ok, "scan found violations"
        print_table(title, reports[0].cases, rows)


if __name__ == "__main__":
    main()
