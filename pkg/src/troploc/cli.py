"""Command line interface.

Exit codes: 0 success, 1 input error, 2 infeasible instance,
3 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import location, oracle
from .documents import (
    InstanceDocument,
    infeasible_document,
    load_instance,
    parse_cameras,
    parse_solution,
    serialize_instance,
    solution_document,
)
from .errors import (
    BoundsError,
    ConformanceError,
    DegenerateInput,
    EmptyFeasible,
    GridTooCoarse,
    Infeasible,
    ParseError,
    ValidationError,
)
from .svg import render_svg

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_INFEASIBLE = 2
EXIT_VERIFY_FAILED = 3

_INPUT_ERRORS = (
    OSError, ParseError, ValidationError, BoundsError, ConformanceError, DegenerateInput, ValueError,
)


class _Parser(argparse.ArgumentParser):
    # usage errors are input errors; argparse's default 2 means "infeasible" here
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _fmt(v) -> str:
    if v is None:
        return "-"
    return format(v, ".12g")


def _pt(p) -> str:
    return f"({_fmt(p[0])}, {_fmt(p[1])})"


def _text_report(doc: dict) -> str:
    lines = [f"mode: {doc['mode']}"]
    if not doc["feasible"]:
        diag = doc["diagnostics"]
        lines.append(f"feasible: no (term {diag['term']} = {_fmt(diag['value'])} > 0)")
    else:
        lines.append("feasible: yes")
        lines.append(f"theta: {_fmt(doc['theta'])}")
        a, b = doc["endpoints"]
        lines.append(f"endpoints: {_pt(a)} -> {_pt(b)}")
        lines.append("polyline: " + ", ".join(_pt(p) for p in doc["polyline"]))
        bps = doc["alpha_breakpoints"]
        lines.append("alpha breakpoints: " + (", ".join(_fmt(a) for a in bps) if bps else "none"))
    sc = doc["derived_scalars"]
    lines.append("derived: " + " ".join(f"{k}={_fmt(v)}" for k, v in sc.items()))
    return "\n".join(lines) + "\n"


def _emit(doc: dict, fmt: str) -> None:
    if fmt == "json":
        sys.stdout.write(json.dumps(doc, indent=2) + "\n")
    else:
        sys.stdout.write(_text_report(doc))


def cmd_solve(args) -> int:
    inst = load_instance(args.instance).to_instance()
    try:
        sol = location.solve(inst)
    except Infeasible as err:
        _emit(infeasible_document(inst, err, location.derive_scalars(inst)), args.format)
        print(f"infeasible: {err}", file=sys.stderr)
        return EXIT_INFEASIBLE
    _emit(solution_document(sol), args.format)
    if args.svg:
        with open(args.svg, "w", encoding="utf-8") as fh:
            fh.write(render_svg(inst, sol))
    return EXIT_OK


def cmd_verify(args) -> int:
    inst = load_instance(args.instance).to_instance()
    try:
        sol = location.solve(inst)
    except Infeasible as err:
        print(f"infeasible: {err}", file=sys.stderr)
        return EXIT_INFEASIBLE
    if args.solution:
        with open(args.solution, encoding="utf-8") as fh:
            sol = parse_solution(fh.read())
    grid = oracle.GridSpec.auto(inst, step=args.step)
    try:
        report = oracle.verify_solution(inst, sol, tol=args.tol, grid=grid)
    except (GridTooCoarse, EmptyFeasible) as err:
        print(f"oracle: {err}", file=sys.stderr)
        return EXIT_INPUT
    if args.format == "json":
        sys.stdout.write(json.dumps(report.as_dict(), indent=2) + "\n")
    else:
        print(f"verdict: {report.verdict}")
        print(f"theta (closed form): {_fmt(report.theta_closed_form)}")
        print(f"theta (grid, step {_fmt(report.step)}): {_fmt(report.theta_grid)}")
        print(f"max constraint violation: {_fmt(report.max_constraint_violation)}")
        print(f"max objective gap on solution set: {_fmt(report.max_objective_gap_on_solution_set)}")
        for p in report.counterexamples:
            print(f"counterexample: {_pt(p)}")
    return EXIT_OK if report.passed else EXIT_VERIFY_FAILED


def cmd_cctv(args) -> int:
    if (args.strip_left is None) != (args.strip_right is None):
        print("error: --strip-left and --strip-right go together", file=sys.stderr)
        return EXIT_INPUT
    with open(args.cameras, encoding="utf-8") as fh:
        cams = parse_cameras(fh.read())
    strip = None if args.strip_left is None else (args.strip_left, args.strip_right)
    inst = location.cctv_instance(cams, args.cable, strip)
    sys.stdout.write(serialize_instance(InstanceDocument.from_instance(inst)))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="troploc",
        description="Constrained minimax rectilinear facility location in closed form.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve an instance file")
    p.add_argument("instance")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--svg", metavar="PATH", help="also write a figure")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="check the closed form against a grid search")
    p.add_argument("instance")
    p.add_argument("--step", type=float, default=oracle.DEFAULT_STEP)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--solution", metavar="PATH",
                   help="verify this solution document instead of a fresh solve")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("cctv", help="build an instance for a CCTV control room")
    p.add_argument("cameras", help="file with rows: x y height")
    p.add_argument("--cable", type=float, required=True, help="maximum cable length")
    p.add_argument("--strip-left", type=float)
    p.add_argument("--strip-right", type=float)
    p.set_defaults(func=cmd_cctv)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _INPUT_ERRORS as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
