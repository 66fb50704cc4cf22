"""Command-line front end.

    weierfano invariants --row 5
    weierfano invariants --surface P2 --bundle '{"tangent_twist": true}' --format json
    weierfano table --format md
    weierfano check
    weierfano search --surface P1xP1 --box 3 --constraints nef,ruling_type_01,chern_ineq
    weierfano curves --surface S2

Exit codes: 0 success, 1 integrity or diff failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Optional, Sequence

from .bundle import bundle_from_json, bundle_to_json
from .catalog import (
    FORMAT_VERSION,
    SEARCH_CONSTRAINTS,
    builtin_table,
    export_table,
    record,
    regenerate_and_diff,
    search_split,
)
from .construct import FamilyInput, full_report, normal_bundle_identity, pullback_fourth_powers
from .errors import DomainError, IntegrityError, MalformedPresentationError
from .surface import SURFACE_NAMES, minus_one_curves, surface

log = logging.getLogger("weierfano")


class UsageError(Exception):
    pass


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="weierfano", description="Invariants of Weierstrass Fano fourfolds.")
    parser.add_argument("-v", "--verbose", action="count", default=0)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("invariants", help="invariant report for one family or pair")
    p.add_argument("--row", type=int, help="family id 1..22")
    p.add_argument("--surface", choices=SURFACE_NAMES)
    p.add_argument("--bundle", help="bundle specifier as JSON")
    p.add_argument("--format", choices=("json", "text"), default="text")

    p = sub.add_parser("table", help="regenerated table of the 22 families")
    p.add_argument("--format", choices=("md", "csv", "json"), default="md")
    p.add_argument("--format-version", type=int, default=FORMAT_VERSION)

    p = sub.add_parser("check", help="recompute the table and run the identity checks")
    p.add_argument("--format", choices=("json", "text"), default="text")

    p = sub.add_parser("search", help="split bundles passing positivity filters")
    p.add_argument("--surface", choices=SURFACE_NAMES, required=True)
    p.add_argument("--box", type=int, default=3)
    p.add_argument("--constraints", default="",
                   help="comma-separated subset of " + ",".join(sorted(SEARCH_CONSTRAINTS)))
    p.add_argument("--format", choices=("json", "text"), default="text")

    p = sub.add_parser("curves", help="(-1)-curves of a surface")
    p.add_argument("--surface", choices=SURFACE_NAMES, required=True)
    p.add_argument("--format", choices=("json", "text"), default="text")
    return parser


def _input_from_args(args) -> FamilyInput:
    if args.row is not None:
        if args.surface or args.bundle:
            raise UsageError("--row cannot be combined with --surface/--bundle")
        try:
            return record(args.row).input
        except KeyError as exc:
            raise UsageError(str(exc.args[0])) from exc
    if not (args.surface and args.bundle):
        raise UsageError("give --row, or both --surface and --bundle")
    try:
        spec = json.loads(args.bundle)
    except json.JSONDecodeError as exc:
        raise UsageError(f"--bundle is not valid JSON: {exc}") from exc
    S = surface(args.surface)
    try:
        return FamilyInput(S, bundle_from_json(S, spec))
    except (MalformedPresentationError, DomainError) as exc:
        raise UsageError(f"bad bundle specifier: {exc}") from exc


def _cmd_invariants(args, out) -> int:
    inp = _input_from_args(args)
    report = full_report(inp)
    if args.format == "json":
        payload = {"input": {"surface": inp.surface.name, "bundle": bundle_to_json(inp.bundle)}}
        payload.update(report.to_json())
        out.write(json.dumps(payload, indent=2, ensure_ascii=False) + "\n")
        return 0
    for key, value in report.to_json().items():
        out.write(f"{key}: {value}\n")
    return 0


def identity_checks(records=None) -> list[str]:
    """Run the per-row identity suites; return failure messages."""
    failures = []
    for rec in records or builtin_table():
        inp = rec.input
        try:
            for b, lhs, rhs in normal_bundle_identity(inp):
                if lhs != rhs:
                    failures.append(f"row {rec.id}: normal bundle identity fails for {b}: {lhs} != {rhs}")
            for name, value in pullback_fourth_powers(inp):
                if value != 0:
                    failures.append(f"row {rec.id}: int ({name})^4 = {value} != 0")
            if not inp.bundle.whitney_consistent():
                failures.append(f"row {rec.id}: Whitney formula fails")
        except (IntegrityError, DomainError) as exc:
            failures.append(f"row {rec.id}: {exc}")
    return failures


def _cmd_check(args, out, err) -> int:
    records = builtin_table()
    diff = regenerate_and_diff(records)
    failures = identity_checks(records)
    if args.format == "json":
        payload = {
            "summary": diff.summary(),
            "diff": [vars(m) for m in diff.mismatches],
            "errors": [{"id": i, "message": msg} for i, msg in diff.errors],
            "identity_failures": failures,
        }
        out.write(json.dumps(payload, indent=2) + "\n")
    else:
        out.write(diff.summary() + "\n")
        out.write(f"identity checks: {'ok' if not failures else f'{len(failures)} failures'}\n")
    for line in diff.lines() + failures:
        err.write(line + "\n")
    return 0 if diff.ok and not failures else 1


def _cmd_search(args, out) -> int:
    constraints = {c.strip() for c in args.constraints.split(",") if c.strip()}
    unknown = constraints - SEARCH_CONSTRAINTS
    if unknown:
        raise UsageError(f"unknown constraints: {', '.join(sorted(unknown))}")
    if args.box < 0:
        raise UsageError("--box must be non-negative")
    found = search_split(surface(args.surface), args.box, constraints)
    if args.format == "json":
        out.write(json.dumps([bundle_to_json(b) for b in found]) + "\n")
    else:
        for b in found:
            out.write(f"{b.label()}\t{json.dumps(bundle_to_json(b))}\n")
    return 0


def _cmd_curves(args, out) -> int:
    curves = minus_one_curves(surface(args.surface))
    if args.format == "json":
        out.write(json.dumps([c.to_list() for c in curves]) + "\n")
    else:
        for c in curves:
            out.write(f"{c}\n")
    return 0


def run(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.WARNING - 10 * args.verbose, stream=err)
    try:
        if args.command == "invariants":
            return _cmd_invariants(args, out)
        if args.command == "table":
            try:
                out.write(export_table(args.format, format_version=args.format_version))
            except ValueError as exc:
                raise UsageError(str(exc)) from exc
            return 0
        if args.command == "check":
            return _cmd_check(args, out, err)
        if args.command == "search":
            return _cmd_search(args, out)
        if args.command == "curves":
            return _cmd_curves(args, out)
    except UsageError as exc:
        parser.print_usage(err)
        err.write(f"weierfano: error: {exc}\n")
        return 2
    except (IntegrityError, DomainError) as exc:
        err.write(f"weierfano: {type(exc).__name__}: {exc}\n")
        return 1
    return 2


def main() -> None:
    sys.exit(run())
