"""Command line front end.

Every subcommand prints exact values only (rationals as 'p/q'), is
deterministic given argv, and exits 0 on success, 1 on a domain or usage
error, 2 when a verification run found violations.
"""

from __future__ import annotations

import argparse
import json
import re
import sys

from .basket import Basket, BasketParseError, QuotientSingularity, contribution
from .bounds import chi_cap, classify, severi_bound
from .exactmath import DomainError, format_rat, parse_rat
from .formula import (
    CanonicalInvariants,
    chi_mK,
    h0_ample,
    integrality_check,
    plurigenus_table,
    table_to_json_dict,
    table_to_tsv,
)
from .kernels import BACKENDS
from .search import fit_invariants, match_baskets, verify_prop26, verify_prop27

__all__ = ["build_parser", "run", "main"]


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


_SING_RE = re.compile(r"^([+-]?\d+),([+-]?\d+)$")
_SAMPLE_RE = re.compile(r"^(\d+)=([+-]?\d+)$")


def _parse_sing(text: str) -> QuotientSingularity:
    m = _SING_RE.match(text.strip())
    if m is None:
        raise DomainError(f"malformed singularity {text!r}, expected 'r,a'")
    return QuotientSingularity(int(m.group(1)), int(m.group(2)))


def _parse_samples(text: str) -> list[tuple[int, int]]:
    samples = []
    for raw in text.split(";"):
        token = raw.strip()
        m = _SAMPLE_RE.match(token)
        if m is None:
            raise DomainError(f"malformed sample {token!r}, expected 'm=P'")
        samples.append((int(m.group(1)), int(m.group(2))))
    return samples


def _load_basket(args) -> Basket:
    if getattr(args, "basket_file", None):
        with open(args.basket_file, encoding="utf-8") as fh:
            try:
                data = json.load(fh)
            except json.JSONDecodeError as exc:
                raise BasketParseError(f"basket file is not valid JSON: {exc}") from exc
        return Basket.from_json_dict(data)
    if getattr(args, "basket", None) is not None:
        return Basket.parse(args.basket)
    return Basket()


def _add_basket_flags(p, required: bool = False) -> None:
    group = p.add_mutually_exclusive_group(required=required)
    group.add_argument("--basket", metavar="SPEC", help="inline basket, e.g. '2,1;3*5,2'")
    group.add_argument("--basket-file", metavar="PATH", help="basket JSON file")


def _add_format(p, default: str = "tsv") -> None:
    p.add_argument("--format", choices=("tsv", "json"), default=default)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="plurigenus",
        description="Exact plurigenus, singularity contribution, and birationality bound calculator.",
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("contrib", help="correction l(Q, m) of one singularity type")
    p.add_argument("--sing", required=True, metavar="R,A")
    p.add_argument("--m", required=True, type=int)
    _add_format(p)
    p.set_defaults(handler=_cmd_contrib)

    p = sub.add_parser("chi", help="chi(mK) evaluations from (K^3, chi, basket)")
    p.add_argument("--k3", required=True, metavar="P[/Q]")
    p.add_argument("--chi", required=True, type=int)
    _add_basket_flags(p)
    p.add_argument("--m", type=int, help="single level to evaluate")
    p.add_argument("--m-max", type=int, help="level range for --table / --check-integrality")
    p.add_argument("--table", action="store_true", help="print (m, chi(mK)) for m in [0, m-max]")
    p.add_argument("--h0", action="store_true", help="require m >= 2 and K^3 > 0, report h^0(mK)")
    p.add_argument(
        "--check-integrality",
        action="store_true",
        help="list all m in [0, m-max] with non-integral chi(mK)",
    )
    _add_format(p)
    p.set_defaults(handler=_cmd_chi)

    p = sub.add_parser("index", help="lcm of the basket orders")
    _add_basket_flags(p)
    _add_format(p)
    p.set_defaults(handler=_cmd_index)

    p = sub.add_parser("bound", help="the constants (R, m1, m2, m) for a cap C")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--chi-cap", type=int, metavar="C")
    group.add_argument("--hodge", metavar="H0,H1,H2,H3", help="derive C as the sum")
    _add_format(p, default="json")
    p.set_defaults(handler=_cmd_bound)

    p = sub.add_parser("classify", help="case split for a basket under a cap C")
    p.add_argument("--chi-cap", type=int, required=True, metavar="C")
    _add_basket_flags(p, required=True)
    p.add_argument("--k3", metavar="P[/Q]", help="strict mode: K^3 of the canonical model")
    p.add_argument("--chi", type=int, help="strict mode: chi(O)")
    _add_format(p)
    p.set_defaults(handler=_cmd_classify)

    p = sub.add_parser("verify", help="exhaustive consistency scans")
    p.add_argument("--prop", required=True, type=int, choices=(26, 27))
    p.add_argument("--r-max", type=int, default=60)
    p.add_argument("--m-max", type=int, default=200)
    p.add_argument("--alpha-max", type=int, default=50)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--backend", choices=BACKENDS)
    _add_format(p)
    p.set_defaults(handler=_cmd_verify)

    p = sub.add_parser("search", help="baskets matching plurigenus samples")
    p.add_argument("--chi", required=True, type=int)
    p.add_argument("--samples", required=True, metavar="M=P[;M=P...]")
    p.add_argument("--r-max", required=True, type=int)
    p.add_argument("--n-max", required=True, type=int)
    p.add_argument("--workers", type=int, default=1)
    _add_format(p)
    p.set_defaults(handler=_cmd_search)

    p = sub.add_parser("fit", help="solve K^3 for a fixed basket from samples")
    p.add_argument("--chi", required=True, type=int)
    _add_basket_flags(p)
    p.add_argument("--samples", required=True, metavar="M=P[;M=P...]")
    _add_format(p)
    p.set_defaults(handler=_cmd_fit)

    return parser


def _cmd_contrib(args) -> int:
    sing = _parse_sing(args.sing)
    value = contribution(sing, args.m)
    if args.format == "json":
        print(_dumps({"r": sing.r, "a": sing.a, "m": args.m, "value": format_rat(value)}))
    else:
        print(format_rat(value))
    return 0


def _cmd_chi(args) -> int:
    inv = CanonicalInvariants(parse_rat(args.k3), args.chi, _load_basket(args))
    if args.check_integrality:
        if args.m_max is None:
            raise DomainError("--check-integrality requires --m-max")
        bad = integrality_check(inv, args.m_max)
        if args.format == "json":
            print(_dumps({"nonintegral": bad}))
        else:
            for m in bad:
                print(m)
        return 0
    if args.table:
        if args.m_max is None:
            raise DomainError("--table requires --m-max")
        rows = plurigenus_table(inv, args.m_max)
        if args.format == "json":
            print(_dumps(table_to_json_dict(rows)))
        else:
            print(table_to_tsv(rows))
        return 0
    if args.m is None:
        raise DomainError("need --m, or --table / --check-integrality with --m-max")
    value = h0_ample(inv, args.m) if args.h0 else chi_mK(inv, args.m)
    if args.format == "json":
        print(_dumps({"m": args.m, "value": format_rat(value)}))
    else:
        print(format_rat(value))
    return 0


def _cmd_index(args) -> int:
    value = _load_basket(args).index()
    if args.format == "json":
        print(_dumps({"index": str(value)}))
    else:
        print(value)
    return 0


def _cmd_bound(args) -> int:
    if args.chi_cap is not None:
        cap = args.chi_cap
    else:
        parts = args.hodge.split(",")
        if len(parts) != 4:
            raise DomainError(f"--hodge needs four comma-separated values, got {args.hodge!r}")
        try:
            h = [int(part) for part in parts]
        except ValueError as exc:
            raise DomainError(f"malformed --hodge value {args.hodge!r}") from exc
        cap = chi_cap(*h)
    report = severi_bound(cap)
    if args.format == "json":
        print(_dumps(report.to_json_dict()))
    else:
        for key, value in report.to_json_dict().items():
            print(f"{key}={value}")
    return 0


def _cmd_classify(args) -> int:
    b = _load_basket(args)
    if (args.k3 is None) != (args.chi is None):
        raise DomainError("strict mode needs both --k3 and --chi")
    invariants = None
    if args.k3 is not None:
        invariants = CanonicalInvariants(parse_rat(args.k3), args.chi, b)
    result = classify(args.chi_cap, b, invariants)
    if args.format == "json":
        print(_dumps(result.to_json_dict()))
    else:
        print(result.describe())
        if result.h0_13c is not None:
            print(f"h0_13c={format_rat(result.h0_13c)}")
    return 0


def _cmd_verify(args) -> int:
    if args.prop == 26:
        report = verify_prop26(args.r_max, args.m_max, backend=args.backend, workers=args.workers)
    else:
        report = verify_prop27(args.alpha_max, backend=args.backend, workers=args.workers)
    if args.format == "json":
        print(_dumps(report.to_json_dict()))
    else:
        print(report.description)
        print(f"cases={report.cases}")
        print(f"violations={len(report.violations)}")
        for v in report.violations:
            params = " ".join(f"{key}={value}" for key, value in v.params.items())
            print(f"{params} lhs={format_rat(v.lhs)} rhs={format_rat(v.rhs)}")
    return 0 if report.ok else 2


def _cmd_search(args) -> int:
    matches = match_baskets(
        args.chi, _parse_samples(args.samples), args.r_max, args.n_max, workers=args.workers
    )
    if args.format == "json":
        print(
            _dumps(
                {
                    "matches": [
                        {"basket": b.to_json_dict()["basket"], "k3": format_rat(k3)}
                        for b, k3 in matches
                    ]
                }
            )
        )
    else:
        for b, k3 in matches:
            print(f"{b.to_text()}\t{format_rat(k3)}")
    return 0


def _cmd_fit(args) -> int:
    result = fit_invariants(args.chi, _load_basket(args), _parse_samples(args.samples))
    if args.format == "json":
        print(_dumps(result.to_json_dict()))
    else:
        print(f"k3={format_rat(result.k3)}")
        for r in result.residuals:
            print(f"m={r.m} expected={format_rat(r.expected)} got={format_rat(r.got)}")
    return 0


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        print(parser.format_usage().rstrip(), file=sys.stderr)
        return 1
    except SystemExit as exc:  # --help
        return 0 if exc.code in (0, None) else 1
    try:
        return args.handler(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())
