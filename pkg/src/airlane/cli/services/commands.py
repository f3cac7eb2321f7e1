__all__ = [
    "cmd_plan",
    "cmd_eval",
    "cmd_render",
    "cmd_simulate",
    "EXIT_OK",
    "EXIT_INPUT_ERROR",
    "EXIT_PLAN_FAILED",
]

import math
from pathlib import Path
from typing import Any, Dict, List, Optional

import geojson
from pydantic import ValidationError

from ...config import logger
from ...evalharness.handlers import load_route_scenario, write_report
from ...evalharness.schemas import SUITES, ExperimentSpec, Sweep
from ...evalharness.services import run_experiment
from ...geo.handlers import make_projection, to_geo, to_local_arrays
from ...geo.schemas import Projection
from ...pipeline.handlers import export_plan_result
from ...pipeline.schemas import PipelineConfig
from ...pipeline.services import plan_and_contract
from ...planner.handlers import route_length
from ...sim.handlers import (
    export_trajectory_csv,
    init_states_uniform,
    nominal_state_uniform,
    run_batch,
)
from ...utils import AirlaneError, ScenarioError, errors_from_validation
from ..handlers import (
    format_diagnostics,
    load_contract_file,
    load_foreign_contracts,
    load_scenario_file,
    render_contract_svg,
)

EXIT_OK = 0
EXIT_INPUT_ERROR = 1
EXIT_PLAN_FAILED = 2


# --------------------------------------------------
def _input_error(message: str, details: List[str] = ()) -> int:
    logger.error(message)
    for line in details:
        logger.error(f"  {line}")
    return EXIT_INPUT_ERROR


# --------------------------------------------------
def _flag_overrides(overrides: Optional[Dict[str, Any]]) -> Dict[str, Any]:
    return {k: v for k, v in (overrides or {}).items() if v is not None}


# --------------------------------------------------
def cmd_plan(
    scenario_path: str | Path,
    out_dir: str | Path,
    overrides: Optional[Dict[str, Any]] = None,
) -> int:
    """Plans, deconflicts and contracts the scenario route.

    Writes every file of PLAN_OUTPUT_FILES into ``out_dir`` for accepted
    and failed runs alike. Returns 0 when the route is
    accepted, 2 when planning failed and 1 on bad input.
    """
    try:
        scenario = load_scenario_file(scenario_path)
        cfg = scenario.pipeline_config(**_flag_overrides(overrides))
        foreign = load_foreign_contracts(scenario, scenario_path)
    except FileNotFoundError as e:
        return _input_error(f"Missing input: {e.filename or e}")
    except ScenarioError as e:
        return _input_error(str(e), format_diagnostics(e.details))
    except ValidationError as e:
        return _input_error(
            "Invalid command-line overrides",
            format_diagnostics(errors_from_validation(e)),
        )

    logger.info(
        f"Planning {scenario.name}: {len(scenario.nfzs)} NFZs, "
        f"{len(foreign)} foreign contracts, seed {cfg.seed}"
    )
    try:
        result = plan_and_contract(
            scenario.environment(),
            scenario.start,
            scenario.goal,
            foreign,
            cfg,
            **scenario.route_fields(),
        )
    except AirlaneError as e:
        return _input_error(f"Scenario cannot be planned: {e}")
    paths = export_plan_result(result, cfg, out_dir)
    for kind, path in paths.items():
        logger.info(f"{kind}: {path}")
    if result.status.accepted:
        return EXIT_OK
    logger.error(f"Planning {result.status}: {result.status.detail}")
    return EXIT_PLAN_FAILED


# --------------------------------------------------
def _experiment_spec(
    suite: str, scenario: Optional[str], overrides: Dict[str, Any]
) -> ExperimentSpec:
    values: Dict[str, Any] = {"suite": suite}
    if scenario:
        values["scenario"] = scenario
    if "seeds" in overrides:
        values["seeds"] = overrides["seeds"]
    elif "seed" in overrides:
        values["seeds"] = [overrides["seed"]]
    for flag in ("n_aircraft", "t_d", "delta", "max_nodes"):
        if flag in overrides:
            values[flag] = overrides[flag]
    if "verification_threshold" in overrides:
        values["threshold"] = overrides["verification_threshold"]
    if "opt_factor" in overrides:
        values["opt_factors"] = [overrides["opt_factor"]]
    if suite == "planning" and "step" in overrides:
        values["sweep"] = Sweep(parameter="step", values=[overrides["step"]])
    return ExperimentSpec.model_validate(values)


# --------------------------------------------------
def cmd_eval(
    suite: str,
    scenario: Optional[str],
    out_dir: str | Path,
    overrides: Optional[Dict[str, Any]] = None,
) -> int:
    """Runs one experiment suite and writes its CSV and Markdown report."""
    if suite not in SUITES:
        return _input_error(f"Unknown suite {suite!r}, expected one of {SUITES}")
    try:
        spec = _experiment_spec(suite, scenario, _flag_overrides(overrides))
        report = run_experiment(spec)
    except ValidationError as e:
        return _input_error(
            f"Invalid {suite} experiment", format_diagnostics(errors_from_validation(e))
        )
    except FileNotFoundError as e:
        return _input_error(f"Missing input: {e}")
    write_report(report, out_dir)
    failed = sum(row.status != "ok" for row in report.rows)
    if failed:
        logger.warning(f"{failed} of {len(report.rows)} runs did not complete")
    return EXIT_OK


# --------------------------------------------------
def _route_xy(path: Path, projection: Projection) -> List[tuple]:
    with open(path, "r", encoding="utf-8") as f:
        feature = geojson.load(f)
    coords = feature["geometry"]["coordinates"] if feature.get("geometry") else []
    if not coords:
        return []
    lon, lat = zip(*[(c[0], c[1]) for c in coords])
    x, y = to_local_arrays(projection, lat, lon)
    return list(zip(x.tolist(), y.tolist()))


# --------------------------------------------------
def cmd_render(
    contract_path: str | Path,
    out_svg: str | Path,
    route_path: Optional[str | Path] = None,
    scenario_path: Optional[str | Path] = None,
) -> int:
    """Top-down SVG of a contract, optionally with the route GeoJSON and the
    scenario NFZs drawn on top."""
    try:
        contract, origin = load_contract_file(contract_path)
        scenario = load_scenario_file(scenario_path) if scenario_path else None
    except FileNotFoundError as e:
        return _input_error(f"Missing input: {e.filename or e}")
    except ScenarioError as e:
        return _input_error(str(e), format_diagnostics(e.details))

    if origin is not None:
        projection = make_projection(origin)
    elif scenario is not None:
        projection = make_projection(scenario.origin)
    else:
        projection = None

    nfzs = []
    if scenario is not None:
        if origin is None or origin == scenario.origin:
            nfzs = scenario.environment().nfzs
        else:
            logger.warning("Scenario and contract frames differ, NFZs not drawn")

    route_xy = None
    if route_path is not None:
        if projection is None:
            logger.warning("Contract records no origin, route not drawn")
        else:
            try:
                route_xy = _route_xy(Path(route_path), projection)
            except FileNotFoundError as e:
                return _input_error(f"Missing input: {e.filename or e}")
            except (ValueError, KeyError, TypeError) as e:
                return _input_error(f"{route_path} is not a route GeoJSON: {e}")

    path = render_contract_svg(contract, out_svg, nfzs=nfzs, route_xy=route_xy)
    logger.info(f"{len(contract.ovs)} OVs rendered to {path}")
    return EXIT_OK


# --------------------------------------------------
def cmd_simulate(
    scenario: str,
    out_csv: str | Path,
    overrides: Optional[Dict[str, Any]] = None,
    duration: Optional[int] = None,
) -> int:
    """Flies one batch along a route scenario and exports every logged state.

    Without ``duration`` the batch runs for the cruise flight time plus one
    horizon.
    """
    overrides = _flag_overrides(overrides)
    try:
        fixture = load_route_scenario(scenario)
        cfg = PipelineConfig(
            aircraft=fixture.aircraft_model(),
            **{k: v for k, v in overrides.items() if k in PipelineConfig.model_fields},
        )
    except FileNotFoundError as e:
        return _input_error(f"Missing input: {e}")
    except ValidationError as e:
        return _input_error(
            f"Invalid scenario {scenario}",
            format_diagnostics(errors_from_validation(e)),
        )

    route = fixture.route()
    if duration is None:
        cruise_time = route_length(route) / cfg.aircraft.cruise_tas
        duration = int(math.ceil(cruise_time)) + cfg.t_d
    origin_geo = to_geo(route.projection, route.origin)
    heading = route.leg_heading(1)
    states = init_states_uniform(
        origin_geo, heading, cfg.uncertainty, cfg.n_aircraft, t=route.departure_time
    )
    nominal = nominal_state_uniform(
        origin_geo, heading, cfg.uncertainty, t=route.departure_time
    )
    traj = run_batch(
        states, route, cfg.aircraft, cfg.uncertainty, duration, nominal=nominal
    )
    path = export_trajectory_csv(traj, out_csv)
    logger.info(
        f"{traj.n} trajectories over {duration} s, "
        f"{traj.finished_fraction():.0%} finished, written to {path}"
    )
    return EXIT_OK
