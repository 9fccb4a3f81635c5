"""Command-line front end.

Exit codes: 0 success, 1 mathematical inconsistency (a bug), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import oracle
from .bernoulli import theorem_inputs
from .errors import WolstenholmeError
from .modmath import is_prime
from .scan import ScanConfig, default_jobs, run_scan
from .theorems import build_report, theorem1_conditions, theorem2_conditions

EXIT_OK, EXIT_INCONSISTENT, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _prime_arg(text: str) -> int:
    try:
        p = int(text)
    except ValueError:
        raise UsageError(f"not an integer: {text!r}")
    if p < 7:
        raise UsageError(f"p must be >= 7, got {p}")
    if not is_prime(p):
        raise UsageError(f"{p} is not prime")
    return p


def _fmt_conditions(label: str, cond) -> str:
    flags = ", ".join(f"{n}={v}" for n, v in zip("abcd", cond))
    state = "consistent" if cond.consistent else "INCONSISTENT"
    return f"{label}: {flags} -> {state}"


def cmd_check(args, out) -> int:
    p = _prime_arg(args.p)
    report = build_report(p, deep=True)
    print(f"p = {p}", file=out)
    print(_fmt_conditions("theorem1", theorem1_conditions(p)), file=out)
    print(_fmt_conditions("theorem2", theorem2_conditions(p)), file=out)
    for outcome in report.checks:
        print(outcome.describe(), file=out)
    print(json.dumps(report.to_record()), file=out)
    return EXIT_OK if report.ok else EXIT_INCONSISTENT


def cmd_scan(args, out) -> int:
    try:
        cfg = ScanConfig(args.lo, args.hi, args.jobs, args.format, args.deep, args.out)
    except ValueError as exc:
        raise UsageError(str(exc))

    def flag(p: int):
        print(f"WOLSTENHOLME PRIME: {p}", file=sys.stderr, flush=True)

    if cfg.out:
        with open(cfg.out, "w", newline="") as fh:
            summary = run_scan(cfg, fh, flag)
    else:
        summary = run_scan(cfg, out, flag)
    print(summary.trailer(cfg), file=sys.stderr)
    return EXIT_OK if summary.ok else EXIT_INCONSISTENT


def cmd_oracle(args, out) -> int:
    try:
        results = oracle.run_oracle(args.max_p)
    except ValueError as exc:
        raise UsageError(str(exc))
    for r in results:
        print(r.line(), file=out)
    return EXIT_OK if oracle.all_passed(results) else EXIT_INCONSISTENT


def cmd_bernoulli(args, out) -> int:
    p = _prime_arg(args.p)
    b = theorem_inputs(p)
    print(f"B_(p-3) mod p = {b.bern_p3.value}", file=out)
    b5 = "unsupported (p < 11)" if b.bern_p5 is None else b.bern_p5.value
    print(f"B_(p-5) mod p = {b5}", file=out)
    print(f"B_(p^3-p^2-2) mod p^2 = {b.bern_big.value}", file=out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wolst",
        description="Wolstenholme-type congruences: per-prime dossiers, scans and oracles.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="full report for one prime")
    c.add_argument("p")
    c.add_argument("--deep", action="store_true", help="accepted for symmetry; check is always deep")
    c.set_defaults(func=cmd_check)

    s = sub.add_parser("scan", help="scan [lo, hi) for Wolstenholme primes")
    s.add_argument("lo", type=int)
    s.add_argument("hi", type=int)
    s.add_argument("--jobs", type=int, default=default_jobs())
    s.add_argument("--deep", action="store_true")
    s.add_argument("--format", choices=("jsonl", "csv"), default="jsonl")
    s.add_argument("--out", default=None)
    s.set_defaults(func=cmd_scan)

    o = sub.add_parser("oracle", help="cross-validate fast paths against exact oracles")
    o.add_argument("--max-p", type=int, default=200)
    o.set_defaults(func=cmd_oracle)

    b = sub.add_parser("bernoulli", help="B_(p-3), B_(p-5) mod p and B_(p^3-p^2-2) mod p^2")
    b.add_argument("p")
    b.set_defaults(func=cmd_bernoulli)
    return parser


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"wolst: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except WolstenholmeError as exc:
        print(f"wolst: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def entry() -> None:
    sys.exit(main())
