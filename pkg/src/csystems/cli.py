"""Command line entry point: ``check <file> [--suite NAME ...] ...``."""
from __future__ import annotations

import argparse
import sys

from . import dsl
from .suite import (Params, SelectionError, document_selection, exit_status, names,
                    parse_selection, run_suite, to_jsonl, to_text)


def build_parser():
    ap = argparse.ArgumentParser(prog="check", description="Run named checks on a spec document.")
    ap.add_argument("file", help="spec document, or - for stdin")
    ap.add_argument("--suite", action="append", metavar="NAME",
                    help="check, group or unique prefix; may carry parameters, e.g. 'NAME n=2'")
    ap.add_argument("--n", type=int)
    ap.add_argument("--depth", type=int)
    ap.add_argument("--truncation", type=int)
    ap.add_argument("--format", choices=("json", "text"), default="text")
    ap.add_argument("--strict", action="store_true", help="treat skipped checks as failures")
    ap.add_argument("--no-time", action="store_true", help="omit timings from json output")
    ap.add_argument("--list", action="store_true", help="list check names and exit")
    return ap


def main(argv=None):
    ap = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    if "--list" in argv:
        print("\n".join(names()))
        return 0
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    try:
        text = sys.stdin.read() if args.file == "-" else open(args.file, encoding="utf-8").read()
    except OSError as e:
        print(f"check: {e}", file=sys.stderr)
        return 2
    try:
        doc = dsl.parse(text)
    except dsl.ParseError as e:
        print(f"{args.file}:{e.line}:{e.col}: {e.msg}", file=sys.stderr)
        return 2
    selection = args.suite or document_selection(doc) or ["all"]
    try:
        parse_selection(selection)
        parse_selection(document_selection(doc) or [])
    except SelectionError as e:
        print(f"check: {e}", file=sys.stderr)
        return 2
    overrides = Params(args.n, args.truncation, args.depth)
    records = run_suite(doc, selection, overrides)
    if args.format == "json":
        sys.stdout.write(to_jsonl(records, timing=not args.no_time))
    else:
        sys.stdout.write(to_text(records))
    return exit_status(records, args.strict)


if __name__ == "__main__":
    sys.exit(main())
