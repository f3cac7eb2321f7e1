#!/usr/bin/env python3
"""

Date   : 18-oct-2026

Purpose: airlane command line (plan, eval, render, simulate)
"""

__all__ = ["get_args", "main"]

import argparse
import sys
from pathlib import Path

from . import __version__
from .cli.services import cmd_eval, cmd_plan, cmd_render, cmd_simulate
from .config import settings
from .evalharness.schemas import SUITES


# --------------------------------------------------
def _common_flags() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(add_help=False)

    parser.add_argument(
        "--seed",
        help="Seed of every random stream (default: scenario or AIRLANE_SEED)",
        metavar="seed",
        type=int,
        default=None,
    )

    parser.add_argument(
        "--n-aircraft",
        help="Aircraft per simulated batch",
        metavar="n",
        type=int,
        default=None,
    )

    parser.add_argument(
        "--td",
        help="OV duration t_d in seconds",
        metavar="seconds",
        type=int,
        default=None,
    )

    parser.add_argument(
        "--delta",
        help="Overlap delta between consecutive OVs in seconds",
        metavar="seconds",
        type=float,
        default=None,
    )

    parser.add_argument(
        "--step",
        help="Tree growth step in meters",
        metavar="meters",
        type=float,
        default=None,
    )

    parser.add_argument(
        "--max-nodes",
        help="Node budget M of the planning tree",
        metavar="M",
        type=int,
        default=None,
    )

    parser.add_argument(
        "--opt-factor",
        help="Rope optimization factor (route points looked ahead per shortcut)",
        metavar="k",
        type=int,
        default=None,
    )

    parser.add_argument(
        "--threshold",
        help="Holdout fraction a reach tube must contain to pass verification",
        metavar="ratio",
        type=float,
        default=None,
    )

    parser.add_argument(
        "--conflict-threshold",
        help="Occupancy fraction above which a foreign cell is a conflict",
        metavar="ratio",
        type=float,
        default=None,
    )

    parser.add_argument(
        "-o",
        "--out",
        help="Output directory (or file for render/simulate)",
        metavar="path",
        type=Path,
        default=None,
    )

    return parser


# --------------------------------------------------
def get_args(argv=None):
    """Get command-line arguments"""

    common = _common_flags()
    parser = argparse.ArgumentParser(
        prog="airlane",
        description=(
            "Deconflicted route planning wrapped in 4D operational volume contracts"
        ),
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    parser.add_argument("--version", action="version", version=__version__)
    commands = parser.add_subparsers(dest="command", required=True)

    plan = commands.add_parser(
        "plan",
        parents=[common],
        help="Plan, deconflict and contract a scenario",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    plan.add_argument("scenario", help="Scenario JSON file", metavar="scenario")
    plan.add_argument(
        "--avoid-foreign",
        help="Plan the candidate around foreign OVs while they are active",
        action="store_true",
        default=None,
    )

    evaluate = commands.add_parser(
        "eval",
        parents=[common],
        help="Run an experiment suite and write its report",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    evaluate.add_argument(
        "suite", help=f"One of {', '.join(SUITES)}", metavar="suite", type=str
    )
    evaluate.add_argument(
        "scenario",
        help="Shipped scenario name or JSON path (default depends on the suite)",
        metavar="scenario",
        nargs="?",
        default=None,
    )
    evaluate.add_argument(
        "--seeds",
        help="Several seeds, one run each",
        metavar="seed",
        type=int,
        nargs="+",
        default=None,
    )

    render = commands.add_parser(
        "render",
        parents=[common],
        help="Draw a contract as a top-down SVG",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    render.add_argument("contract", help="Contract JSON file", metavar="contract")
    render.add_argument(
        "--route", help="Route GeoJSON to overlay", metavar="route", default=None
    )
    render.add_argument(
        "--scenario",
        help="Scenario JSON whose NFZs are overlaid",
        metavar="scenario",
        default=None,
    )

    simulate = commands.add_parser(
        "simulate",
        parents=[common],
        help="Fly one batch along a route scenario and export it as CSV",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    simulate.add_argument(
        "scenario", help="Shipped route scenario name or JSON path", metavar="scenario"
    )
    simulate.add_argument(
        "--duration",
        help="Seconds to simulate (default: cruise flight time plus one horizon)",
        metavar="seconds",
        type=int,
        default=None,
    )

    return parser.parse_args(argv)


# --------------------------------------------------
def _overrides(args) -> dict:
    return {
        "seed": args.seed,
        "n_aircraft": args.n_aircraft,
        "t_d": args.td,
        "delta": args.delta,
        "step": args.step,
        "max_nodes": args.max_nodes,
        "opt_factor": args.opt_factor,
        "verification_threshold": args.threshold,
        "conflict_threshold": args.conflict_threshold,
        "avoid_foreign": getattr(args, "avoid_foreign", None),
    }


# --------------------------------------------------
def main(argv=None) -> int:
    """Make a jazz noise here"""

    args = get_args(argv)
    overrides = _overrides(args)
    out = args.out or settings.AIRLANE_OUTPUT_DIR

    if args.command == "plan":
        return cmd_plan(args.scenario, out, overrides)
    if args.command == "eval":
        overrides["seeds"] = args.seeds
        return cmd_eval(args.suite, args.scenario, out, overrides)
    if args.command == "render":
        default_svg = settings.AIRLANE_OUTPUT_DIR / f"{Path(args.contract).stem}.svg"
        out_svg = args.out or default_svg
        return cmd_render(
            args.contract, out_svg, route_path=args.route, scenario_path=args.scenario
        )
    default_csv = settings.AIRLANE_OUTPUT_DIR / f"{Path(args.scenario).stem}_batch.csv"
    out_csv = args.out or default_csv
    return cmd_simulate(args.scenario, out_csv, overrides, duration=args.duration)


# --------------------------------------------------
if __name__ == "__main__":
    sys.exit(main())

    # From the repository root

    # poetry run python -m airlane.main plan scenario.json
