"""Command line entry point ``massey-torus``."""

from __future__ import annotations

import argparse
import json
import sys

from .report import InputError, IntegrityError, analyze, builtin_fixture, input_to_json, parse_input
from .suites import run_selfcheck
from .toruscx import ChainMapError

EXIT_OK, EXIT_INPUT, EXIT_INTEGRITY = 0, 2, 3


def _load_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def _emit(report, fmt, out):
    out.write(report.dumps() if fmt == "json" else report.to_table())
    out.write("\n")


def build_parser():
    ap = argparse.ArgumentParser(prog="massey-torus", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="analyse an input file")
    a.add_argument("--input", required=True)
    a.add_argument("--eigenvalues", default="all", help="'all' or a JSON file with a list of eigenvalues")
    a.add_argument("--max-page", type=int, default=None)
    a.add_argument("--format", choices=("table", "json"), default="table")

    e = sub.add_parser("example", help="run a built-in fixture")
    e.add_argument("name", choices=("heisenberg", "surface"))
    e.add_argument("--n", type=int, default=1)
    e.add_argument("--emit-input", action="store_true")
    e.add_argument("--format", choices=("table", "json"), default="table")

    s = sub.add_parser("selfcheck", help="random-instance property suite")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--count", type=int, default=20)
    return ap


def main(argv=None, out=None):
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        if args.command == "analyze":
            eig = "all" if args.eigenvalues == "all" else _load_json(args.eigenvalues)
            inp = parse_input(_load_json(args.input), eig, args.max_page)
            _emit(analyze(inp), args.format, out)
        elif args.command == "example":
            inp = builtin_fixture(args.name, args.n)
            if args.emit_input:
                out.write(json.dumps(input_to_json(inp), sort_keys=True, indent=2) + "\n")
            else:
                _emit(analyze(inp), args.format, out)
        else:
            bad = run_selfcheck(args.seed, args.count, log=lambda m: out.write(m + "\n"))
            return EXIT_INTEGRITY if bad else EXIT_OK
    except IntegrityError as exc:
        sys.stderr.write(f"integrity violation: {exc}\n")
        return EXIT_INTEGRITY
    except (InputError, ChainMapError, ValueError, ZeroDivisionError) as exc:
        sys.stderr.write(f"input error: {exc}\n")
        return EXIT_INPUT
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
