"""Command-line surface with stable text formats and exit codes.

Exit code contract: 0 for success or a SATISFIED verdict, 1 for a
verification failure or VIOLATED verdict, 2 for unusable input (parse
errors, missing files, bad flag combinations).  Reports are deterministic;
line order is lexicographic where it is not structural.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from . import formats
from .chains import (
    ConditionError,
    RelativeClassError,
    essential_norm,
    localize,
    subcomplex_closure,
)
from .complex_core import ComplexError, FaceRef
from .corner import CornerRangeError, verify_corner_bijection
from .morse import (
    FlowGraphError,
    check_bound,
    count_trajectories,
    count_trajectories_recursive,
    validate_flow,
)
from .strat import StratificationError, count_chains

OK, FAIL, BAD_INPUT = 0, 1, 2


@dataclass
class CommandResult:
    exit_code: int
    lines: list[str]


def _emit(result: CommandResult, fmt: str) -> int:
    for line in result.lines:
        if fmt == "records":
            print(line.replace(": ", "=", 1))
        else:
            print(line)
    return result.exit_code


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as err:
        raise formats.FormatError(f"cannot read {path}: {err}") from err


def cmd_trajectories(args) -> CommandResult:
    fg = formats.parse_flow(_read(args.flow_file))
    direct = count_trajectories(fg)
    recursive = count_trajectories_recursive(fg)
    lines = []
    for point in sorted(direct.per_point):
        lines.append(f"point {point}: {direct.per_point[point]}")
    lines.append(f"total: {direct.total}")
    if (direct.total != recursive.total
            or direct.per_point != dict(recursive.per_point)):
        lines.append("cross-check: FAILED (direct and recursive counts differ)")
        return CommandResult(FAIL, lines)
    lines.append("cross-check: ok")
    return CommandResult(OK, lines)


def cmd_validate_flow(args) -> CommandResult:
    fg = formats.parse_flow(_read(args.flow_file))
    report = validate_flow(fg, euler=args.euler)
    lines = [f"d2-squared: {'ok' if report.d_squared_ok else 'FAILED'}"]
    if report.d_squared_witness:
        lines.append(f"witness: {report.d_squared_witness}")
    lines.append(f"euler-characteristic: {report.euler_value}")
    if args.euler is not None:
        lines.append(f"euler-check: {'ok' if report.euler_ok else 'FAILED'}")
    return CommandResult(OK if report.ok else FAIL, lines)


def cmd_check_bound(args) -> CommandResult:
    fg = formats.parse_flow(_read(args.flow_file))
    given = [args.simplicial_volume, args.surface_genus, args.hyperbolic_volume]
    if sum(v is not None for v in given) != 1:
        raise formats.FormatError(
            "give exactly one of --simplicial-volume, --surface-genus, "
            "--hyperbolic-volume")
    if args.hyperbolic_volume is not None and args.dim is None:
        raise formats.FormatError("--hyperbolic-volume requires --dim")
    report = check_bound(
        fg,
        simplicial_volume=args.simplicial_volume,
        surface_genus=args.surface_genus,
        hyperbolic_volume=args.hyperbolic_volume,
        dim=args.dim,
    )
    lines = [
        f"trajectories: {report.total}",
        f"bound: {report.bound}",
        f"verdict: {report.verdict}",
    ]
    return CommandResult(OK if report.satisfied else FAIL, lines)


def cmd_corner(args) -> CommandResult:
    report = verify_corner_bijection(args.n)
    lines = [
        f"essential: {report.essential_count}",
        f"chains: {report.chain_count}",
        f"bijection: {'ok' if report.ok else 'FAILED'}",
    ]
    return CommandResult(OK if report.ok else FAIL, lines)


def cmd_norm(args) -> CommandResult:
    complex, strat = formats.parse_complex(_read(args.complex_file))
    if strat is None:
        raise formats.FormatError("complex file carries no stratum lines")
    chain = formats.parse_chain(_read(args.chain_file), complex)
    try:
        value = essential_norm(chain, strat, allow_boundary=True)
    except ConditionError as err:
        lines = [f"conditions: FAILED"]
        for name, msg in sorted(err.report.witnesses.items()):
            lines.append(f"{name}: {msg}")
        return CommandResult(FAIL, lines)
    return CommandResult(OK, [f"essential-norm: {value}"])


def cmd_localize(args) -> CommandResult:
    complex, strat = formats.parse_complex(_read(args.complex_file))
    if strat is None:
        raise formats.FormatError("complex file carries no stratum lines")
    c_rel = formats.parse_chain(_read(args.chain_file), complex)
    h = formats.parse_chain(_read(args.class_file), complex)
    refs = []
    tokens = [t for t in args.subcomplex.split(",") if t] if args.subcomplex else []
    strata = set(strat.strata())
    lookup = {ref.name: ref for ref in complex.all_simplices()}
    for tok in tokens:
        if tok in strata:
            refs.extend(strat.simplices_of(tok))
        elif tok in lookup:
            refs.append(lookup[tok])
        else:
            raise formats.FormatError(
                f"--subcomplex token {tok!r} names no stratum or simplex")
    try:
        result = localize(complex, refs, c_rel, h, strat)
    except ConditionError as err:
        lines = ["conditions: FAILED"]
        for name, msg in sorted(err.report.witnesses.items()):
            lines.append(f"{name}: {msg}")
        return CommandResult(FAIL, lines)
    except (RelativeClassError, ValueError) as err:
        return CommandResult(FAIL, [f"localize: FAILED ({err})"])
    Path(args.output).write_text(formats.write_chain(result.cycle),
                                 encoding="utf-8")
    before = essential_norm(c_rel, strat, subcomplex=subcomplex_closure(
        complex, refs) if refs else None, allow_boundary=True)
    lines = [
        f"cycle-terms: {len(result.cycle)}",
        f"extension-terms: {len(result.extension)}",
        f"essential-norm: {before}",
        f"output: {args.output}",
    ]
    return CommandResult(OK, lines)


def cmd_count_chains(args) -> CommandResult:
    poset = formats.parse_poset(_read(args.poset_file))
    count = count_chains(poset, args.length, distinct_labels=args.distinct_labels)
    return CommandResult(OK, [f"chains: {count}"])


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stratmorse",
        description="Stratified chains, essential norms, and Morse flow graphs")
    parser.add_argument("--format", choices=("plain", "records"),
                        default="plain", help="report style")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("trajectories",
                       help="count maximal broken trajectories two ways")
    p.add_argument("flow_file")
    p.set_defaults(func=cmd_trajectories)

    p = sub.add_parser("validate-flow", help="mod-2 and Euler checks")
    p.add_argument("flow_file")
    p.add_argument("--euler", type=int, default=None)
    p.set_defaults(func=cmd_validate_flow)

    p = sub.add_parser("check-bound",
                       help="trajectory count vs a simplicial-volume value")
    p.add_argument("flow_file")
    p.add_argument("--simplicial-volume", type=Fraction, default=None)
    p.add_argument("--surface-genus", type=int, default=None)
    p.add_argument("--hyperbolic-volume", type=float, default=None)
    p.add_argument("--dim", type=int, default=None)
    p.set_defaults(func=cmd_check_bound)

    p = sub.add_parser("corner",
                       help="essential simplices vs stratum chains on the cube")
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_corner)

    p = sub.add_parser("norm", help="essential stratified norm of a chain")
    p.add_argument("complex_file")
    p.add_argument("chain_file")
    p.set_defaults(func=cmd_norm)

    p = sub.add_parser("localize",
                       help="close a relative cycle without essential growth")
    p.add_argument("complex_file")
    p.add_argument("chain_file", help="relative cycle")
    p.add_argument("class_file", help="target cycle")
    p.add_argument("--subcomplex", default="",
                   help="comma-separated strata or simplex ids")
    p.add_argument("--output", default="localized-cycle.txt")
    p.set_defaults(func=cmd_localize)

    p = sub.add_parser("count-chains", help="totally ordered chains in a poset")
    p.add_argument("poset_file")
    p.add_argument("--length", type=int, required=True)
    p.add_argument("--distinct-labels", action="store_true")
    p.set_defaults(func=cmd_count_chains)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        result = args.func(args)
    except (formats.FormatError, ComplexError, StratificationError,
            FlowGraphError, CornerRangeError) as err:
        print(f"error: {err}", file=sys.stderr)
        return BAD_INPUT
    return _emit(result, args.format)


if __name__ == "__main__":
    sys.exit(main())
