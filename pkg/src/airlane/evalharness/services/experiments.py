__all__ = [
    "ExperimentService",
    "run_point_inclusion",
    "run_sensitivity",
    "run_planning_benchmarks",
    "run_experiment",
    "FRESH_BATCH_SEED_OFFSET",
]

import math
import time
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from ...config import logger
from ...geo.handlers import to_geo
from ...ovmodel.handlers import contract_mean_area
from ...ovmodel.schemas import Contract
from ...pipeline.schemas import PipelineConfig
from ...pipeline.services import ContractGenerationService
from ...planner.handlers import (
    max_nodes_for_step,
    plan_candidate,
    rope_optimize,
    route_length,
)
from ...sim.handlers import init_states_uniform, nominal_state_uniform, run_batch
from ...sim.schemas import UncertaintyConfig
from ...utils import (
    ConfigError,
    InfeasibleResampleError,
    PlanningTimeoutError,
    VerificationFailedError,
)
from ..handlers import (
    aggregate_rows,
    count_inclusion,
    load_planning_scenario,
    load_route_scenario,
)
from ..schemas import ExperimentReport, ExperimentRow, ExperimentSpec, RouteScenario

# Offset that keeps the inclusion batch independent of the batches that
# built the contract.
FRESH_BATCH_SEED_OFFSET = 10_000

# Seeds failing with these are recorded as failed rows.
CONTRACT_ERRORS = (
    VerificationFailedError,
    InfeasibleResampleError,
    PlanningTimeoutError,
)


# -------------------------------------------------
def _value_label(value: Any) -> str:
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(f"{v:g}" for v in value) + "]"
    return f"{value:g}"


# -------------------------------------------------
@dataclass
class ExperimentService:
    """Runs one experiment suite over every seed and sweep point of a spec."""

    spec: ExperimentSpec
    rows: List[ExperimentRow] = field(init=False, default_factory=list)
    scenario: Optional[RouteScenario] = field(init=False, default=None)

    # -------------------------------------------------
    def __post_init__(self):
        if self.spec.suite != "planning":
            self.scenario = load_route_scenario(self.spec.scenario)

    # -------------------------------------------------
    def _pipeline_config(self, seed: int, **uncertainty) -> PipelineConfig:
        unc = UncertaintyConfig(seed=seed, **uncertainty)
        return PipelineConfig(
            t_d=self.spec.t_d,
            delta=self.spec.delta,
            n_aircraft=self.spec.n_aircraft,
            verification_threshold=self.spec.threshold,
            max_horizons=self.spec.max_horizons,
            seed=seed,
            aircraft=self.scenario.aircraft_model(),
            uncertainty=unc,
        )

    # -------------------------------------------------
    def _contract(self, cfg: PipelineConfig) -> Contract:
        return ContractGenerationService(self.scenario.route(), cfg).run()

    # -------------------------------------------------
    def _row(self, seed: int, **values) -> ExperimentRow:
        row = ExperimentRow(
            suite=self.spec.suite, scenario=self.spec.scenario, seed=seed, **values
        )
        self.rows.append(row)
        return row

    # -------------------------------------------------
    def _report(self) -> ExperimentReport:
        report = ExperimentReport(spec=self.spec, rows=self.rows)
        agg = aggregate_rows(report.to_dataframe(), self.spec.suite)
        report.aggregates = agg.to_dict(orient="records")
        return report

    # -------------------------------------------------
    def point_inclusion(self) -> ExperimentReport:
        """Builds the contract, then flies a fresh batch over the whole route
        (autopilot only, never steered back into the OVs) and counts the
        logged points some valid OV contains."""
        for seed in self.spec.seeds:
            cfg = self._pipeline_config(seed)
            try:
                contract = self._contract(cfg)
            except CONTRACT_ERRORS as e:
                logger.warning(f"Seed {seed}: no contract ({e})")
                self._row(seed, status=f"failed: {type(e).__name__}")
                continue
            route = self.scenario.route()
            fresh = cfg.uncertainty.model_copy(
                update={"seed": seed + FRESH_BATCH_SEED_OFFSET}
            )
            origin = to_geo(route.projection, route.origin)
            heading = route.leg_heading(1)
            states = init_states_uniform(
                origin, heading, fresh, self.spec.n_aircraft, t=route.departure_time
            )
            t0, t1 = contract.span
            traj = run_batch(
                states,
                route,
                cfg.aircraft,
                fresh,
                int(math.ceil(t1 - t0)),
                nominal=nominal_state_uniform(origin, heading, fresh, t=t0),
            )
            # The nominal trajectory is not a flown aircraft.
            traj = traj.subset([i for i in range(traj.n) if i != traj.center_index])
            total, included = count_inclusion(contract, traj)
            self._row(
                seed,
                total_points=total,
                included_points=included,
                inclusion_pct=100.0 * included / total if total else 0.0,
                n_ovs=len(contract.ovs),
            )
            logger.info(
                f"{self.spec.scenario} seed {seed}: {included}/{total} points "
                f"inside the contract ({100.0 * included / max(total, 1):.2f}%)"
            )
        return self._report()

    # -------------------------------------------------
    def sensitivity(self) -> ExperimentReport:
        """OV count and mean footprint per initial-condition sweep point."""
        sweep = self.spec.sweep
        for value in sweep.values:
            override: Dict[str, Any] = {sweep.parameter: value}
            if sweep.parameter == "pos_jitter":
                override["speed_range"] = (18.0, 18.0)
            for seed in self.spec.seeds:
                cfg = self._pipeline_config(seed, **override)
                label = _value_label(value)
                try:
                    contract = self._contract(cfg)
                except CONTRACT_ERRORS as e:
                    logger.warning(f"{sweep.parameter}={label} seed {seed}: {e}")
                    self._row(
                        seed,
                        parameter=sweep.parameter,
                        value=label,
                        status=f"failed: {type(e).__name__}",
                    )
                    continue
                self._row(
                    seed,
                    parameter=sweep.parameter,
                    value=label,
                    n_ovs=len(contract.ovs),
                    mean_area_km2=contract_mean_area(contract),
                )
        return self._report()

    # -------------------------------------------------
    def planning_benchmarks(self) -> ExperimentReport:
        """Candidate planning time and rope gain per step size and
        optimization factor on the reference environment."""
        scenario = load_planning_scenario(self.spec.scenario)
        env = scenario.environment()
        for value in self.spec.sweep.values:
            step = float(value)
            max_nodes = self.spec.max_nodes or max_nodes_for_step(step)
            for seed in self.spec.seeds:
                started = time.perf_counter()
                try:
                    candidate = plan_candidate(
                        env,
                        scenario.start,
                        scenario.goal,
                        step,
                        max_nodes=max_nodes,
                        seed=seed,
                    )
                except PlanningTimeoutError as e:
                    logger.warning(f"step {step:g} seed {seed}: {e}")
                    self._row(
                        seed,
                        parameter="step",
                        value=_value_label(step),
                        max_nodes=max_nodes,
                        status="failed: PlanningTimeoutError",
                    )
                    continue
                elapsed = time.perf_counter() - started
                candidate_length = route_length(candidate.route)
                for factor in self.spec.opt_factors:
                    optimized = rope_optimize(candidate.route, env, factor)
                    optimized_length = route_length(optimized)
                    self._row(
                        seed,
                        parameter="step",
                        value=_value_label(step),
                        opt_factor=factor,
                        max_nodes=max_nodes,
                        wall_time_s=elapsed,
                        iterations=candidate.iterations,
                        candidate_length=candidate_length,
                        optimized_length=optimized_length,
                        delta_length=candidate_length - optimized_length,
                    )
                logger.info(
                    f"step {step:g} seed {seed}: candidate {candidate_length:.0f} m "
                    f"in {elapsed:.2f} s"
                )
        return self._report()

    # -------------------------------------------------
    def run(self) -> ExperimentReport:
        runners = {
            "inclusion": self.point_inclusion,
            "sensitivity": self.sensitivity,
            "planning": self.planning_benchmarks,
        }
        return runners[self.spec.suite]()


# -------------------------------------------------
def _run_suite(spec: ExperimentSpec, suite: str) -> ExperimentReport:
    if spec.suite != suite:
        raise ConfigError(f"Expected a {suite} spec, got {spec.suite}")
    return ExperimentService(spec).run()


# -------------------------------------------------
def run_point_inclusion(spec: ExperimentSpec) -> ExperimentReport:
    return _run_suite(spec, "inclusion")


# -------------------------------------------------
def run_sensitivity(spec: ExperimentSpec) -> ExperimentReport:
    return _run_suite(spec, "sensitivity")


# -------------------------------------------------
def run_planning_benchmarks(spec: ExperimentSpec) -> ExperimentReport:
    return _run_suite(spec, "planning")


# -------------------------------------------------
def run_experiment(spec: ExperimentSpec) -> ExperimentReport:
    return ExperimentService(spec).run()
