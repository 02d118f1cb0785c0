"""Command-line entry point: ``laver {table,bitmap,eval,verify,fcn,suites}``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .cache import CacheFormatError, dumps, read_cache, write_cache
from .core import DEFAULT_MEMORY_BUDGET, BudgetExceeded, LevelError, build_table
from .crit import ResidueVector, crit_index, gamma_image

EXIT_OK, EXIT_COUNTEREXAMPLE, EXIT_USAGE, EXIT_BUDGET, EXIT_IO = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


def _parse_levels(text: str) -> range:
    lo, sep, hi = text.partition("..")
    try:
        if not sep:
            return range(int(lo), int(lo) + 1)
        return range(int(lo), int(hi) + 1)
    except ValueError:
        raise UsageError(f"bad level range {text!r}; use N or LO..HI") from None


def cmd_table(args, out) -> int:
    cache = Path(args.cache) if args.cache else None
    if cache is not None and cache.exists():
        table = read_cache(cache)
        if table.n != args.level:
            raise UsageError(f"cache {cache} holds level {table.n}, not {args.level}")
    else:
        table = build_table(args.level, accel=args.accel, memory_budget=args.memory_budget)
        if cache is not None:
            write_cache(table, cache)
    if args.format == "cache":
        if not args.output:
            raise UsageError("--format cache needs -o/--output")
        Path(args.output).write_bytes(dumps(table))
        return EXIT_OK
    for a in range(1, table.size + 1):
        if args.format == "full":
            row = table.full_row(a)
            out.write(" ".join(map(str, row.tolist())) + "\n")
        else:
            row = table.row(a)
            out.write(f"{a} {len(row)}: " + " ".join(map(str, row.tolist())) + "\n")
    return EXIT_OK


def cmd_bitmap(args, out) -> int:
    from .bitmap import BitmapSpec, parse_range, write_bitmap

    lo, hi = parse_range(args.range) if args.range else (1, None)
    spec = BitmapSpec(args.kind, args.level, lo, hi, raw=args.raw)
    try:
        spec.bounds()
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    nbytes = write_bitmap(spec, args.output)
    out.write(f"wrote {nbytes} bytes to {args.output}\n")
    return EXIT_OK


def cmd_eval(args, out) -> int:
    from .terms import TermSyntaxError, eval_term, parse_term

    try:
        term = parse_term(args.term)
    except TermSyntaxError as exc:
        raise UsageError(str(exc)) from None
    levels = _parse_levels(args.levels)
    for n in levels:
        out.write(f"{n} {eval_term(term, n, budget=args.budget)}\n")
    if args.crit or args.gamma is not None:
        cap = levels[-1]
        k = ResidueVector(cap, tuple(eval_term(term, n, budget=args.budget) for n in range(cap + 1)))
        if args.crit:
            out.write(f"crit {crit_index(k)}\n")
        if args.gamma is not None:
            for m in range(args.gamma + 1):
                out.write(f"gamma {m} -> {gamma_image(k, m)}\n")
    return EXIT_OK


def cmd_verify(args, out) -> int:
    from .verify import SUITES, Bounds, run_suite

    if args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; try 'laver suites'")
    bounds = Bounds(n=args.level, cap=args.cap, size=args.size, jobs=args.jobs, seed=args.seed)
    res = run_suite(args.suite, bounds)
    out.write(json.dumps(res.summary(), default=str, sort_keys=True) + "\n")
    return EXIT_OK if res.passed else EXIT_COUNTEREXAMPLE


def cmd_suites(args, out) -> int:
    from .verify import SUITES

    for name, s in SUITES.items():
        out.write(f"{name:22s} {s.doc}\n")
    return EXIT_OK


def cmd_fcn(args, out) -> int:
    from .terms import f_of

    out.write(f"{f_of(args.n, args.cap)}\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="laver", description="Laver table engine")
    sub = p.add_subparsers(dest="command", required=True)

    t = sub.add_parser("table", help="build or load A'_n and print its rows")
    t.add_argument("-n", "--level", type=int, required=True)
    t.add_argument("--format", choices=("full", "compressed", "cache"), default="full")
    t.add_argument("--accel", action="store_true", help="use block-decomposed rows")
    t.add_argument("--cache", help="load from / save to this row-cache file")
    t.add_argument("-o", "--output", help="destination for --format cache")
    t.add_argument("--memory-budget", type=int, default=DEFAULT_MEMORY_BUDGET)
    t.set_defaults(func=cmd_table)

    b = sub.add_parser("bitmap", help="write a PBM picture of a table")
    b.add_argument("kind", choices=("row-bits", "period-grid"))
    b.add_argument("-n", "--level", type=int, required=True)
    b.add_argument("--range", help="rows LO..HI (default all)")
    b.add_argument("--raw", action="store_true", help="binary P4 instead of plain P1")
    b.add_argument("-o", "--output", required=True)
    b.set_defaults(func=cmd_bitmap)

    e = sub.add_parser("eval", help="residues of a one-generator term")
    e.add_argument("term")
    e.add_argument("levels", help="N or LO..HI")
    e.add_argument("--crit", action="store_true")
    e.add_argument("--gamma", type=int, metavar="M", help="also print k(gamma_m) for m <= M")
    e.add_argument("--budget", type=int, default=1_000_000)
    e.set_defaults(func=cmd_eval)

    v = sub.add_parser("verify", help="run a named property suite")
    v.add_argument("suite")
    v.add_argument("-n", "-N", "--level", type=int, dest="level")
    v.add_argument("--cap", type=int)
    v.add_argument("--size", type=int)
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--seed", type=int, default=0)
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("suites", help="list suite names")
    s.set_defaults(func=cmd_suites)

    f = sub.add_parser("fcn", help="F(n) as far as the cap can see")
    f.add_argument("n", type=int)
    f.add_argument("--cap", type=int, default=8)
    f.set_defaults(func=cmd_fcn)
    return p


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args, out)
    except (UsageError, LevelError) as exc:
        print(f"laver: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"laver: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (CacheFormatError, OSError) as exc:
        print(f"laver: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"laver: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
