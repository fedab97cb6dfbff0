"""Command line interface.

Subcommands:

* ``invariant <file> --cycle NAME [--delete A,B] [--format ...]``
* ``compare <fileA> <fileB> --cycle NAME [--delete-a ...] [--delete-b ...]
  [--oriented-only]``
* ``validate <file>`` -- schema plus intersection-total checks
* ``report <file.jsonl> [--format ...]`` -- re-render a saved machine report

Exit codes: 0 success, 1 usage or input error, 2 internal invariant failure,
3 the compare verdict is DISTINGUISHED.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .curve import validate_bezout
from .errors import CurvelinkError, FixtureError, InternalInvariantError
from .fixture import parse_fixture, serialize_fixture
from .pipeline import Report, compare, run_pipeline

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INTERNAL = 2
EXIT_DISTINGUISHED = 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="curvelink",
                     description="Linking invariant of algebraic plane curves")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p):
        p.add_argument("--format", choices=("text", "json-lines"),
                       default="text", help="output format")
        p.add_argument("--output", type=Path, default=None,
                       help="write the report to a file instead of stdout")

    p_inv = sub.add_parser("invariant", help="compute a cycle's linking set")
    p_inv.add_argument("file", type=Path)
    p_inv.add_argument("--cycle", required=True)
    p_inv.add_argument("--delete", default="",
                       help="comma-separated components to remove first")
    add_format(p_inv)

    p_cmp = sub.add_parser("compare", help="test two curves against each other")
    p_cmp.add_argument("file_a", type=Path)
    p_cmp.add_argument("file_b", type=Path)
    p_cmp.add_argument("--cycle", required=True)
    p_cmp.add_argument("--cycle-b", default=None,
                       help="cycle name in the second fixture (defaults to --cycle)")
    p_cmp.add_argument("--delete-a", default="")
    p_cmp.add_argument("--delete-b", default="")
    p_cmp.add_argument("--oriented-only", action="store_true",
                       help="skip the conjugate-set comparison")
    add_format(p_cmp)

    p_val = sub.add_parser("validate", help="schema and intersection checks")
    p_val.add_argument("file", type=Path)
    p_val.add_argument("--no-bezout", action="store_true",
                       help="skip the degree-product intersection check")

    p_rep = sub.add_parser("report", help="re-render a saved json-lines report")
    p_rep.add_argument("file", type=Path)
    add_format(p_rep)

    return parser


def _split_deletions(text: str) -> tuple:
    return tuple(part.strip() for part in text.split(",") if part.strip())


def _load(path: Path):
    try:
        text = path.read_text()
    except OSError as exc:
        raise _UsageError(f"cannot read {path}: {exc}") from exc
    try:
        return parse_fixture(text)
    except FixtureError as exc:
        raise _UsageError(f"{path}: {exc}") from exc


def _emit(report: Report, args) -> None:
    text = report.to_text() if args.format == "text" else report.to_json_lines()
    if args.output is not None:
        args.output.write_text(text)
    else:
        sys.stdout.write(text)


def _cmd_invariant(args) -> int:
    doc = _load(args.file)
    try:
        result = run_pipeline(doc, args.cycle, _split_deletions(args.delete),
                              fixture_label=args.file.name)
    except (ValueError, CurvelinkError) as exc:
        if isinstance(exc, InternalInvariantError):
            raise
        raise _UsageError(str(exc)) from exc
    _emit(result.report, args)
    return EXIT_OK


def _cmd_compare(args) -> int:
    doc_a = _load(args.file_a)
    doc_b = _load(args.file_b)
    try:
        report = compare(
            doc_a, doc_b, args.cycle, args.cycle_b,
            _split_deletions(args.delete_a), _split_deletions(args.delete_b),
            oriented_only=args.oriented_only,
            label_a=args.file_a.name, label_b=args.file_b.name,
        )
    except (ValueError, CurvelinkError) as exc:
        if isinstance(exc, InternalInvariantError):
            raise
        raise _UsageError(str(exc)) from exc
    _emit(report, args)
    if report.payload["verdict"] == "DISTINGUISHED":
        return EXIT_DISTINGUISHED
    return EXIT_OK


def _cmd_validate(args) -> int:
    doc = _load(args.file)
    lines = [f"{args.file.name}: schema OK"]
    lines.append(f"  components: {len(doc.curve.components)}")
    lines.append(f"  singular points: {len(doc.curve.singular_points)}")
    lines.append(f"  cycles: {len(doc.cycles)}")
    lines.append(f"  braids: {len(doc.braids)}")
    if not args.no_bezout:
        try:
            outcome = validate_bezout(doc.curve)
        except ValueError as exc:
            raise _UsageError(f"{args.file.name}: {exc}") from exc
        for a, b, total in outcome["checked"]:
            lines.append(f"  intersection total {a}*{b} = {total}: OK")
        for a, b in outcome["skipped"]:
            lines.append(f"  pair {a},{b}: no declared common point (skipped)")
    sys.stdout.write("\n".join(lines) + "\n")
    return EXIT_OK


def _cmd_report(args) -> int:
    try:
        text = args.file.read_text()
    except OSError as exc:
        raise _UsageError(f"cannot read {args.file}: {exc}") from exc
    try:
        report = Report.from_json_lines(text)
    except (ValueError, KeyError) as exc:
        raise _UsageError(f"{args.file.name}: not a report file ({exc})") from exc
    _emit(report, args)
    return EXIT_OK


_COMMANDS = {
    "invariant": _cmd_invariant,
    "compare": _cmd_compare,
    "validate": _cmd_validate,
    "report": _cmd_report,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InternalInvariantError as exc:
        print(f"internal invariant failure: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
