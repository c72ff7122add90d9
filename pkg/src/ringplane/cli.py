"""Command-line front end.

Exit codes: 0 all checks passed, 1 a verification reported false,
2 usage / parse / argument error, 3 capacity exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .classify import classify_case
from .errors import CapacityError, InvariantViolation, RingPlaneError
from .plane import build_plane, incidence_csv, plane_to_json, verify_theorems
from .ring import find_isomorphism, ring_invariants, ring_to_json, units, jacobson_radical, characteristic
from .ringspec import parse_spec
from .suite import run_suite

OK, FALSE, USAGE, CAPACITY = 0, 1, 2, 3


@dataclass
class CommandOutcome:
    code: int
    report: object
    artifacts: list = field(default_factory=list)


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on its own; raising keeps run() side-effect free
    def error(self, message):
        raise _UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


class _UsageError(Exception):
    pass


def _dump(doc) -> str:
    return json.dumps(doc, separators=(",", ":")) + "\n"


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="print a JSON report")
    common.add_argument("--out", metavar="PATH", help="write the artifact to PATH")
    common.add_argument("--budget", type=int, metavar="N", help="triple enumeration budget")

    parser = _Parser(prog="ringplane", description="Finite rings and their projective planes.")
    groups = parser.add_subparsers(dest="group", required=True, parser_class=_Parser)

    ring = groups.add_parser("ring", help="construct and classify rings")
    ring_cmds = ring.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in ("build", "classify", "export"):
        p = ring_cmds.add_parser(name, parents=[common])
        p.add_argument("spec")
    iso = ring_cmds.add_parser("iso", parents=[common])
    iso.add_argument("spec")
    iso.add_argument("other")

    plane = groups.add_parser("plane", help="build and verify PG(2, R)")
    plane_cmds = plane.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in ("build", "stats", "verify", "export"):
        p = plane_cmds.add_parser(name, parents=[common])
        p.add_argument("spec")
        if name == "export":
            p.add_argument("--format", choices=("json", "csv"), default="json")

    suite = groups.add_parser("suite", help="run the verification suite")
    suite_cmds = suite.add_subparsers(dest="command", required=True, parser_class=_Parser)
    run = suite_cmds.add_parser("run", parents=[common])
    run.add_argument("--max-order", type=int, default=16, metavar="N")
    run.add_argument("--mutate", type=int, default=None, help=argparse.SUPPRESS)
    return parser


def _ring_summary(spec, R) -> dict:
    return {"ring": spec, "name": R.name, "order": R.order,
            "characteristic": characteristic(R), "units": len(units(R)),
            "radical": len(jacobson_radical(R)), "commutative": R.is_commutative()}


def _text(doc) -> str:
    lines = []
    for key, value in doc.items():
        if isinstance(value, dict):
            value = json.dumps(value, separators=(",", ":"))
        lines.append(f"{key}: {value}")
    return "\n".join(lines) + "\n"


def _ring_command(args) -> CommandOutcome:
    R = parse_spec(args.spec)
    if args.command == "build":
        doc = _ring_summary(args.spec, R)
        return CommandOutcome(OK, doc)
    if args.command == "classify":
        report = classify_case(R)
        doc = {"ring": args.spec, **report.as_dict()}
        return CommandOutcome(OK, doc)
    if args.command == "iso":
        S = parse_spec(args.other)
        phi = find_isomorphism(R, S)
        doc = {"ring": args.spec, "other": args.other, "isomorphic": phi is not None,
               "map": None if phi is None else [int(v) for v in phi.array]}
        if phi is None:
            doc["invariants_differ"] = ring_invariants(R) != ring_invariants(S)
        return CommandOutcome(OK, doc)
    return CommandOutcome(OK, ring_to_json(R))


def _plane_command(args) -> CommandOutcome:
    R = parse_spec(args.spec)
    plane = build_plane(R, budget=args.budget, spec=args.spec)
    if args.command == "build":
        doc = {"ring": args.spec, "points": len(plane.points), "lines": len(plane.lines),
               "left_unimodular_triples": plane.left_unimodular_count,
               "right_unimodular_triples": plane.right_unimodular_count}
        return CommandOutcome(OK, doc)
    if args.command == "stats":
        return CommandOutcome(OK, {"ring": args.spec, **plane.params.as_dict()})
    if args.command == "verify":
        report = verify_theorems(plane)
        body = _dump(report.as_dict()) if args.json else report.certificate()
        return CommandOutcome(OK if report.ok else FALSE, body)
    if args.format == "csv":
        return CommandOutcome(OK, incidence_csv(plane))
    return CommandOutcome(OK, plane_to_json(plane))


def _suite_command(args) -> CommandOutcome:
    outcome = run_suite(args.max_order, mutate=args.mutate, budget=args.budget)
    if args.json:
        body = _dump(outcome.as_dict())
    else:
        lines = []
        for r in outcome.rings:
            status = "PASS" if r.ok else "FAIL"
            lines.append(f"{status} {r.spec} order={r.order} case={r.case}")
            for f in r.failures:
                lines.append(f"    {f['check']}: {json.dumps(f['witness'], separators=(',', ':'))}")
        lines.append(f"result: {'PASS' if outcome.ok else 'FAIL'} ({len(outcome.rings)} rings)")
        body = "\n".join(lines) + "\n"
    return CommandOutcome(OK if outcome.ok else FALSE, body)


def run(argv) -> CommandOutcome:
    """Parse ``argv`` and execute one subcommand; never exits the interpreter."""
    try:
        args = build_parser().parse_args(argv)
    except _UsageError as exc:
        return CommandOutcome(USAGE, str(exc) + "\n")
    except SystemExit as exc:  # --help
        return CommandOutcome(OK if not exc.code else USAGE, "")
    handler = {"ring": _ring_command, "plane": _plane_command, "suite": _suite_command}[args.group]
    try:
        outcome = handler(args)
    except CapacityError as exc:
        return CommandOutcome(CAPACITY, f"capacity error: {exc}\n")
    except InvariantViolation as exc:
        return CommandOutcome(FALSE, f"invariant violation: {exc}\n")
    except (RingPlaneError, ValueError, OSError) as exc:
        return CommandOutcome(USAGE, f"error: {exc}\n")
    if isinstance(outcome.report, dict):
        outcome.report = _dump(outcome.report) if args.json else _text(outcome.report)
    if args.out:
        Path(args.out).write_text(outcome.report)
        outcome.artifacts.append(args.out)
    return outcome


def main(argv=None) -> int:
    outcome = run(sys.argv[1:] if argv is None else argv)
    if outcome.code in (OK, FALSE) and not outcome.artifacts:
        sys.stdout.write(outcome.report)
    elif outcome.artifacts:
        sys.stdout.write(f"wrote {outcome.artifacts[0]}\n")
    else:
        sys.stderr.write(outcome.report)
    return outcome.code


if __name__ == "__main__":
    sys.exit(main())
