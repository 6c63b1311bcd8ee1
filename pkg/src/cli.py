"""
Command-line entry point.

    python -m src level --Z 1 --n-radial 0 --twice-j 1 --format json
    python -m src sweep --z 1..10 --n-max 3 --format csv --out -

Exit codes: 0 success, 1 domain/validation error, 2 usage error or invalid
sweep spec, 3 I/O failure while writing a sweep.
"""

import argparse
import json
import logging
import sys
from typing import Any, Callable, Dict, List, Optional, Sequence

from pydantic import BaseModel, TypeAdapter, ValidationError

from config.config import (
    settings,
    MSG_CONFIG_ERROR,
    MSG_CONVERGENCE_ERROR,
    MSG_DOMAIN_ERROR,
    MSG_INVALID_SWEEP,
    MSG_IO_ERROR,
    MSG_SWEEP_SKIPPED,
    MSG_SWEEP_WRITTEN,
)
from src.conservation import BalancePair, classical_residual, solve_v2, strict_residual
from src.constants import Constants, resolve_constants
from src.errors import ConvergenceError, DomainError, SweepSpecError
from src.field import EnergySplit, FieldPoint, FieldShift, energy_split, field_shift
from src.levels import LevelResult, level_corrected, validate_state
from src.logging_config import level_for_verbosity, setup_logging
from src.report import SweepSpec, emit, parse_z_range, sweep
from src.transitions import Transition, series, transition
from src.version import get_version

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_USAGE = 2
EXIT_IO = 3

class FieldReport(BaseModel):
    point: FieldPoint
    shift: FieldShift
    energies: EnergySplit

class ConservationReport(BaseModel):
    pair: BalancePair
    v2_solved: bool
    classical_residual_ev: float
    strict_residual_ev: float

SCHEMAS: Dict[str, Callable[[], dict]] = {
    "level": lambda: LevelResult.model_json_schema(mode="serialization"),
    "transition": lambda: Transition.model_json_schema(mode="serialization"),
    "series": lambda: TypeAdapter(List[Transition]).json_schema(mode="serialization"),
    "field": lambda: FieldReport.model_json_schema(mode="serialization"),
    "conserve": lambda: ConservationReport.model_json_schema(mode="serialization"),
    "constants": lambda: Constants.model_json_schema(by_alias=True, mode="serialization"),
}

def _describe(error: Exception) -> str:
    if isinstance(error, ValidationError):
        parts = []
        for item in error.errors():
            location = ".".join(str(part) for part in item.get("loc", ())) or "input"
            parts.append(f"{location}: {item.get('msg')}")
        return "; ".join(parts)
    return str(error)

def _flatten(data: Any, prefix: str = "") -> List[tuple]:
    if isinstance(data, dict):
        items = []
        for key, value in data.items():
            items.extend(_flatten(value, f"{prefix}{key}."))
        return items
    return [(prefix.rstrip("."), data)]

def _format_text(data: Any) -> str:
    pairs = _flatten(data)
    width = max((len(key) for key, _ in pairs), default=0)
    lines = []
    for key, value in pairs:
        shown = repr(value) if isinstance(value, float) else str(value)
        lines.append(f"{key.ljust(width)}  {shown}")
    return "\n".join(lines)

def _print_model(model: BaseModel, output_format: str) -> None:
    if output_format == "json":
        print(model.model_dump_json(indent=2))
    else:
        print(_format_text(model.model_dump()))

# --- Subcommand handlers ---

def _cmd_level(args: argparse.Namespace, constants: Constants) -> int:
    state = validate_state(args.Z, args.n_radial, args.twice_j, constants)
    _print_model(level_corrected(state, constants), args.format)
    return EXIT_OK

def _cmd_transition(args: argparse.Namespace, constants: Constants) -> int:
    upper = validate_state(args.Z, args.upper_n_radial, args.upper_twice_j, constants)
    lower = validate_state(args.Z, args.lower_n_radial, args.lower_twice_j, constants)
    _print_model(transition(upper, lower, constants), args.format)
    return EXIT_OK

def _cmd_series(args: argparse.Namespace, constants: Constants) -> int:
    if args.lower_n < 1:
        raise DomainError(f"lower-n must be >= 1, got {args.lower_n}")
    lower = validate_state(args.Z, args.lower_n - 1, 1, constants)
    lines = series(args.Z, lower, args.n_max, constants)
    if args.format == "json":
        print(TypeAdapter(List[Transition]).dump_json(lines, indent=2).decode("utf-8"))
        return EXIT_OK
    print(f"{'upper_n':>7}  {'E_line_uncorr_eV':>22}  {'E_line_corr_eV':>22}  "
          f"{'shift_level_diff_eV':>24}  {'shift_eq15_eV':>24}  {'wavelength_nm':>20}")
    for line in lines:
        print(f"{line.upper.n:>7}  {line.E_line_uncorrected!r:>22}  {line.E_line_corrected!r:>22}  "
              f"{line.shift_level_difference!r:>24}  {line.shift_eq15_literal!r:>24}  "
              f"{line.wavelength_uncorrected!r:>20}")
    return EXIT_OK

def _cmd_field(args: argparse.Namespace, constants: Constants) -> int:
    point = FieldPoint(Z=args.Z, r=args.r_nm, v=args.v)
    report = FieldReport(point=point, shift=field_shift(point, constants), energies=energy_split(point, constants))
    _print_model(report, args.format)
    return EXIT_OK

def _cmd_conserve(args: argparse.Namespace, constants: Constants) -> int:
    v2 = args.v2
    if args.solve_v2:
        v2 = solve_v2(args.Z, args.r1_nm, args.v1, args.r2_nm, constants)
    pair = BalancePair(Z=args.Z, r1=args.r1_nm, v1=args.v1, r2=args.r2_nm, v2=v2)
    report = ConservationReport(
        pair=pair,
        v2_solved=args.solve_v2,
        classical_residual_ev=classical_residual(pair, constants),
        strict_residual_ev=strict_residual(pair, constants),
    )
    _print_model(report, args.format)
    return EXIT_OK

def _cmd_sweep(args: argparse.Namespace, constants: Constants) -> int:
    try:
        z_min, z_max = parse_z_range(args.z)
        spec = SweepSpec(
            z_min=z_min,
            z_max=z_max,
            n_max=args.n_max,
            include_all_j=args.all_j,
            mode=args.mode,
            output_format=args.format,
        )
    except (SweepSpecError, ValidationError) as e:
        print(MSG_INVALID_SWEEP.format(error=_describe(e)), file=sys.stderr)
        return EXIT_USAGE

    table = sweep(spec, constants)
    try:
        emit(table, spec.output_format, args.out)
    except OSError as e:
        print(MSG_IO_ERROR.format(destination=args.out, error=e), file=sys.stderr)
        return EXIT_IO
    logger.info(MSG_SWEEP_WRITTEN.format(rows=len(table.rows), mode=spec.mode,
                                         format=spec.output_format, destination=args.out))
    if table.notices:
        logger.warning(MSG_SWEEP_SKIPPED.format(count=len(table.notices)))
    return EXIT_OK

def _cmd_schema(args: argparse.Namespace, constants: Constants) -> int:
    print(json.dumps(SCHEMAS[args.kind](), indent=2, sort_keys=True))
    return EXIT_OK

# --- Parser ---

def _common_parent() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    group = parent.add_argument_group("constants and logging")
    group.add_argument("--config", metavar="PATH",
                       help="constants file (JSON or key=value) with alpha, electron_rest_energy_ev, hc_ev_nm")
    group.add_argument("--alpha", type=float, help="fine-structure constant override (dimensionless)")
    group.add_argument("--mec2-ev", type=float, dest="mec2_ev", help="electron rest energy override, eV")
    group.add_argument("--hc-ev-nm", type=float, dest="hc_ev_nm", help="h c override, eV*nm")
    group.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO logs, -vv for DEBUG (stderr)")
    return parent

def _add_format(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--format", choices=("json", "text"), default=settings.DEFAULT_OUTPUT_FORMAT,
                        help="output format (default: %(default)s)")

def build_parser() -> argparse.ArgumentParser:
    parent = _common_parent()
    parser = argparse.ArgumentParser(
        prog="levelshift",
        description="Effective-mass corrected hydrogen-like levels, line shifts and Coulomb-field mass shifts. "
                    "Energies in eV (binding energies are positive), lengths in nm, speeds in units of c.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {get_version()}")
    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND", required=True)

    p = subparsers.add_parser("level", parents=[parent], help="corrected level and displacements for one state")
    p.add_argument("--Z", type=int, required=True, dest="Z", help="nuclear charge number (1..137)")
    p.add_argument("--n-radial", type=int, required=True, dest="n_radial", help="radial quantum number n' (>= 0)")
    p.add_argument("--twice-j", type=int, required=True, dest="twice_j", help="2j, odd (1 for j=1/2)")
    _add_format(p)
    p.set_defaults(handler=_cmd_level)

    p = subparsers.add_parser("transition", parents=[parent], help="line energy and both shift variants for one transition")
    p.add_argument("--Z", type=int, required=True, dest="Z", help="nuclear charge number (1..137)")
    p.add_argument("--lower-n-radial", type=int, required=True, dest="lower_n_radial", help="lower state n' (>= 0)")
    p.add_argument("--lower-twice-j", type=int, required=True, dest="lower_twice_j", help="lower state 2j, odd")
    p.add_argument("--upper-n-radial", type=int, required=True, dest="upper_n_radial", help="upper state n' (>= 0)")
    p.add_argument("--upper-twice-j", type=int, required=True, dest="upper_twice_j", help="upper state 2j, odd")
    _add_format(p)
    p.set_defaults(handler=_cmd_transition)

    p = subparsers.add_parser("series", parents=[parent], help="lines into one lower level from j=1/2 upper levels")
    p.add_argument("--Z", type=int, required=True, dest="Z", help="nuclear charge number (1..137)")
    p.add_argument("--lower-n", type=int, required=True, dest="lower_n", help="principal number of the lower level (j=1/2)")
    p.add_argument("--n-max", type=int, required=True, dest="n_max", help="largest upper principal number")
    _add_format(p)
    p.set_defaults(handler=_cmd_series)

    p = subparsers.add_parser("sweep", parents=[parent], help="CSV/JSON shift table over a (Z, n, j) grid")
    p.add_argument("--z", default="1..92", help="inclusive charge range, e.g. 1..92 (default: %(default)s)")
    p.add_argument("--n-max", type=int, default=5, dest="n_max", help="largest principal number (default: %(default)s)")
    p.add_argument("--all-j", action="store_true", dest="all_j", help="include every valid j, not only j=1/2")
    p.add_argument("--mode", choices=("levels", "transitions"), default="levels", help="table kind (default: %(default)s)")
    p.add_argument("--format", choices=("csv", "json"), default="csv", help="table format (default: %(default)s)")
    p.add_argument("--out", default="-", help="output path, '-' for standard output (default: %(default)s)")
    p.set_defaults(handler=_cmd_sweep)

    p = subparsers.add_parser("field", parents=[parent], help="effective mass and velocity at a point of the Coulomb field")
    p.add_argument("--Z", type=int, required=True, dest="Z", help="charge number of the field source (>= 0)")
    p.add_argument("--r-nm", type=float, required=True, dest="r_nm", help="distance from the charge, nm (> 0)")
    p.add_argument("--v", type=float, required=True, dest="v", help="speed as a fraction of c (0 <= v < 1)")
    _add_format(p)
    p.set_defaults(handler=_cmd_field)

    p = subparsers.add_parser("conserve", parents=[parent], help="energy balance residuals between two field points")
    p.add_argument("--Z", type=int, required=True, dest="Z", help="charge number of the field source (>= 0)")
    p.add_argument("--r1-nm", type=float, required=True, dest="r1_nm", help="first radius, nm (> 0)")
    p.add_argument("--v1", type=float, required=True, dest="v1", help="speed at r1, fraction of c")
    p.add_argument("--r2-nm", type=float, required=True, dest="r2_nm", help="second radius, nm (> 0)")
    speed = p.add_mutually_exclusive_group(required=True)
    speed.add_argument("--v2", type=float, dest="v2", help="speed at r2, fraction of c")
    speed.add_argument("--solve-v2", action="store_true", dest="solve_v2", help="solve v2 from classical conservation")
    _add_format(p)
    p.set_defaults(handler=_cmd_conserve)

    p = subparsers.add_parser("schema", parents=[parent], help="JSON schema of a subcommand's JSON output")
    p.add_argument("kind", choices=sorted(SCHEMAS), metavar="KIND", help="output document: %(choices)s")
    p.set_defaults(handler=_cmd_schema)

    return parser

def run(argv: Optional[Sequence[str]] = None) -> int:
    """Parse argv, dispatch, and return the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    setup_logging(level_for_verbosity(args.verbose))

    try:
        constants = resolve_constants(
            config_path=args.config,
            alpha=args.alpha,
            electron_rest_energy_ev=args.mec2_ev,
            hc_ev_nm=args.hc_ev_nm,
        )
    except OSError as e:
        print(MSG_CONFIG_ERROR.format(path=args.config, error=e), file=sys.stderr)
        return EXIT_DOMAIN
    except (DomainError, ValidationError, json.JSONDecodeError) as e:
        print(MSG_DOMAIN_ERROR.format(error=_describe(e)), file=sys.stderr)
        return EXIT_DOMAIN

    try:
        return args.handler(args, constants)
    except ConvergenceError as e:
        print(MSG_CONVERGENCE_ERROR.format(error=e), file=sys.stderr)
        return EXIT_DOMAIN
    except (DomainError, ValidationError) as e:
        print(MSG_DOMAIN_ERROR.format(error=_describe(e)), file=sys.stderr)
        return EXIT_DOMAIN

def main() -> None:
    sys.exit(run())

if __name__ == "__main__":
    main()
