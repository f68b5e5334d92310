"""Command line: ``realroots isolate`` and ``realroots bench``."""

from __future__ import annotations

import argparse
import json
import sys

from .bench import BenchConfig, run_bench
from .dyadic import parse_dyadic
from .errors import ParseError, PrecisionCapError, SolveAborted
from .families import FAMILIES
from .polyio import read_poly
from .solver import MODES, SolveConfig, isolate

EXIT_OK, EXIT_PARSE, EXIT_PRECISION, EXIT_TIMEOUT = 0, 2, 3, 4


def _endpoint(text):
    try:
        return parse_dyadic(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"{exc} (endpoints must be dyadic)") from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="realroots", description="Real root isolation for polynomials.")
    sub = p.add_subparsers(dest="command", required=True)

    iso = sub.add_parser("isolate", help="isolate the real roots of a polynomial file")
    iso.add_argument("--input", required=True, metavar="FILE")
    iso.add_argument("--interval", nargs=2, type=_endpoint, metavar=("A", "B"))
    iso.add_argument("--mode", choices=MODES, default="anewdsc")
    iso.add_argument("--seed", type=int, default=0)
    iso.add_argument("--json", action="store_true")
    iso.add_argument("--stats", action="store_true")
    iso.add_argument("--trace", metavar="FILE", help="write one JSON object per tree node")
    iso.add_argument("--rho-cap", type=int, default=SolveConfig.rho_cap, metavar="BITS")
    iso.add_argument("--no-truncation", action="store_true")
    iso.add_argument("--admissible", choices=("pseudo", "deterministic"), default="pseudo")
    iso.add_argument("--timeout", type=float, metavar="SECS")

    b = sub.add_parser("bench", help="run a benchmark family")
    b.add_argument("--family", choices=FAMILIES, required=True)
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--tau", type=int, default=0)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--scale", type=int, default=256, help="fixed-point bits for the clustered family")
    b.add_argument("--modes", default="anewdsc", help="comma separated list")
    b.add_argument("--verify", action="store_true")
    b.add_argument("--timeout", type=float, default=600.0, metavar="SECS")
    b.add_argument("--json", action="store_true")
    return p


def _print_stats(stats, out):
    for k, v in stats.as_json().items():
        print(f"{k:>18}: {v:.1f}" if isinstance(v, float) else f"{k:>18}: {v}", file=out)


def cmd_isolate(args, out=None) -> int:
    out = out or sys.stdout
    try:
        spec = read_poly(args.input)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    cfg = SolveConfig(
        mode=args.mode, seed=args.seed, rho_cap=args.rho_cap, truncation=not args.no_truncation,
        admissible=args.admissible, time_limit=args.timeout, trace=bool(args.trace),
    )
    try:
        res = isolate(spec.oracle(), args.interval, cfg)
    except TypeError as exc:
        # classic mode on inexact coefficients
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except PrecisionCapError as exc:
        print(f"precision cap: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    except SolveAborted as exc:
        print(f"aborted: {exc}", file=sys.stderr)
        return EXIT_TIMEOUT
    if args.trace:
        with open(args.trace, "w") as fh:
            for rec in res.trace:
                fh.write(json.dumps(rec) + "\n")
    if args.json:
        print(json.dumps(res.as_json()), file=out)
        return EXIT_OK
    for a, b in res.intervals:
        print(f"({a}, {b})  ~ [{float(a):.17g}, {float(b):.17g}]", file=out)
    for p in res.points:
        print(f"root {p}  ~ {float(p):.17g}", file=out)
    if args.stats:
        _print_stats(res.stats, out)
    return EXIT_OK


def cmd_bench(args, out=None) -> int:
    out = out or sys.stdout
    try:
        cfg = BenchConfig(
            families=[args.family], sizes=[(args.n, args.tau)], modes=args.modes.split(","),
            seed=args.seed, scale=args.scale, verify=args.verify, timeout=args.timeout,
        )
        records = list(run_bench(cfg))
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    for r in records:
        if args.json:
            print(json.dumps(r.as_json()), file=out)
        else:
            status = "timeout" if r.timed_out else ("verified" if r.verified else (r.error or "unverified"))
            print(
                f"{r.family} n={r.n} tau={r.tau} {r.mode}: #sol={r.root_count} "
                f"nodes={r.stats['tree_nodes']} time={r.wall_time_s:.1f}s {status}",
                file=out,
            )
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "isolate":
        return cmd_isolate(args)
    return cmd_bench(args)


if __name__ == "__main__":
    sys.exit(main())
