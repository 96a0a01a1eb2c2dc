"""
Command-line front end.

Every subcommand writes one JSON record or CSV table to stdout (or --output);
logs go to stderr so identical inputs give byte-identical output.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

import uvicorn

from teichranders.config import CONFIG, RunSettings
from teichranders.core.errors import (
    AssertionFailure,
    DegeneratePathError,
    DimensionMismatchError,
    TeichRandersError,
    UsageError,
)
from teichranders.core.halfplane import parse_point
from teichranders.core.torus import FoliationVec, isometry_check
from teichranders.services.metric_service import metric_service
from teichranders.services.output_service import FORMATS, output_service
from teichranders.services.space_file_service import space_file_service
from teichranders.services.verification_service import verification_service

logger = logging.getLogger(__name__)

# options whose values are complex literals, foliations or coefficient lists
LITERAL_FLAGS = ("--from", "--to", "--base", "--f", "--g", "--phi", "--psi")


def _emit(args: argparse.Namespace, text: str) -> None:
    output_service.write(text, args.output)


def _json_only(args: argparse.Namespace) -> None:
    if args.fmt == "csv":
        raise UsageError(f"'{args.command}' only emits JSON")


# =============================================================================
# Subcommands
# =============================================================================


def cmd_dist(args: argparse.Namespace) -> int:
    foliation = FoliationVec.parse(args.f) if args.f else None
    record = metric_service.distance(
        parse_point(args.from_), parse_point(args.to), args.t, foliation
    )
    if args.fmt == "csv":
        row = record.model_dump(by_alias=True)
        row["foliation"] = "" if foliation is None else str(foliation)
        row["delta_omega"] = "" if record.delta_omega is None else record.delta_omega
        columns = ("from", "to", "t", "foliation", "d_teich", "delta_t", "delta_omega")
        _emit(args, output_service.render_csv([row], columns))
    else:
        _emit(args, output_service.render_record(record))
    return CONFIG.exit_codes.SUCCESS


def cmd_geodesic(args: argparse.Namespace) -> int:
    record = metric_service.geodesic(
        parse_point(args.from_), parse_point(args.to), args.samples
    )
    if (args.fmt or "csv") == "csv":
        text = output_service.render_csv(record.points, ("s", "re", "im", "norm"))
    else:
        text = output_service.render_record(record)
    _emit(args, text)
    return CONFIG.exit_codes.SUCCESS


def cmd_ray(args: argparse.Namespace) -> int:
    report = metric_service.ray(
        parse_point(args.base),
        FoliationVec.parse(args.g),
        FoliationVec.parse(args.f),
        args.tmax,
        args.samples,
    )
    _emit(args, output_service.render_ray(report, args.fmt or "csv"))
    return CONFIG.exit_codes.SUCCESS


def cmd_isometry_check(args: argparse.Namespace) -> int:
    _json_only(args)
    report = isometry_check(FoliationVec.parse(args.f), args.t, args.pairs, args.seed)
    _emit(args, output_service.render_record(report))
    codes = CONFIG.exit_codes
    return codes.SUCCESS if report.passed else codes.ASSERTION_FAILURE


def cmd_cometric(args: argparse.Namespace) -> int:
    _json_only(args)
    space = space_file_service.load_space(args.space)
    record = metric_service.cometric(
        space,
        space_file_service.parse_coefficients(args.phi, space.k),
        space_file_service.parse_coefficients(args.psi, space.k),
        check_dual=args.check_dual,
        samples=args.samples,
        seed=args.seed,
    )
    _emit(args, output_service.render_record(record))
    return CONFIG.exit_codes.SUCCESS


def cmd_verify(args: argparse.Namespace) -> int:
    _json_only(args)
    summary = verification_service.run(args.suite, args.seed)
    _emit(args, output_service.render_record(summary))
    codes = CONFIG.exit_codes
    return codes.SUCCESS if summary.passed else codes.ASSERTION_FAILURE


def cmd_serve(args: argparse.Namespace) -> int:
    uvicorn.run("teichranders.api.app:app", host=args.host, port=args.port)
    return CONFIG.exit_codes.SUCCESS


# =============================================================================
# Parser
# =============================================================================


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--seed",
        type=int,
        default=RunSettings().seed,
        help="Random seed (CLI > env:TRM_SEED > 0)",
    )
    common.add_argument("--out", "--format", dest="fmt", choices=FORMATS, default=None)
    common.add_argument("--output", type=Path, default=None, help="Write to a file")
    common.add_argument("--verbose", "-v", action="store_true", help="Debug logging")

    parser = argparse.ArgumentParser(
        prog="teichranders",
        description="Teichmüller–Randers weak metrics: distances, rays, cometrics, checks",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dist", parents=[common], help="Distances between two points")
    p.add_argument("--from", dest="from_", required=True)
    p.add_argument("--to", required=True)
    p.add_argument("--t", type=float, default=1.0, help="Weight in [0, 1]")
    p.add_argument("--f", default=None, help="Foliation 'a,b' for delta_omega")
    p.set_defaults(handler=cmd_dist)

    p = sub.add_parser("geodesic", parents=[common], help="Sampled geodesic points")
    p.add_argument("--from", dest="from_", required=True)
    p.add_argument("--to", required=True)
    p.add_argument("--samples", type=int, default=33)
    p.set_defaults(handler=cmd_geodesic)

    p = sub.add_parser("ray", parents=[common], help="Randers lengths along a ray")
    p.add_argument("--base", required=True)
    p.add_argument("--g", required=True, help="Ray foliation 'a,b'")
    p.add_argument("--f", required=True, help="Measuring foliation 'a,b'")
    p.add_argument("--tmax", type=float, default=CONFIG.suites.RAY_TMAX)
    p.add_argument("--samples", type=int, default=CONFIG.suites.RAY_SAMPLES)
    p.set_defaults(handler=cmd_ray)

    p = sub.add_parser("isometry-check", parents=[common], help="Disc isometry check")
    p.add_argument("--f", required=True)
    p.add_argument("--t", type=float, default=1.0)
    p.add_argument("--pairs", type=int, default=CONFIG.suites.ISOMETRY_PAIRS)
    p.set_defaults(handler=cmd_isometry_check)

    p = sub.add_parser("cometric", parents=[common], help="Randers cometric")
    p.add_argument("--space", type=Path, default=None, help="Model-space JSON file")
    p.add_argument("--phi", required=True, help="Coefficients, e.g. '1,0.5+0.2i'")
    p.add_argument("--psi", required=True)
    p.add_argument("--check-dual", action="store_true")
    p.add_argument("--samples", type=int, default=CONFIG.suites.DUAL_SAMPLES)
    p.set_defaults(handler=cmd_cometric)

    p = sub.add_parser("verify", parents=[common], help="Run property suites")
    p.add_argument(
        "--suite",
        default="all",
        help="One of " + ", ".join(verification_service.suite_names()),
    )
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("serve", parents=[common], help="Serve the HTTP API")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(handler=cmd_serve)
    return parser


def join_literal_values(argv: List[str]) -> List[str]:
    """
    Glue literal flags to their values, so "--to -1+2.5i" parses as "--to=-1+2.5i".
    argparse would otherwise read a leading minus as the start of another option.
    """
    joined: List[str] = []
    k = 0
    while k < len(argv):
        token = argv[k]
        value = argv[k + 1] if k + 1 < len(argv) else ""
        if token in LITERAL_FLAGS and value.startswith("-") and not value.startswith("--"):
            joined.append(f"{token}={value}")
            k += 2
        else:
            joined.append(token)
            k += 1
    return joined


def main(argv: Optional[List[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(join_literal_values(argv))
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    codes = CONFIG.exit_codes
    try:
        return args.handler(args)
    except (UsageError, DegeneratePathError, DimensionMismatchError) as e:
        print(f"teichranders {args.command}: {e}", file=sys.stderr)
        return codes.USAGE
    except AssertionFailure as e:
        print(f"teichranders {args.command}: check failed: {e}", file=sys.stderr)
        return codes.ASSERTION_FAILURE
    except TeichRandersError as e:
        print(f"teichranders {args.command}: {e}", file=sys.stderr)
        return codes.DOMAIN


if __name__ == "__main__":
    sys.exit(main())
