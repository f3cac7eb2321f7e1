__all__ = ["ContractGenerationService", "generate_contract"]

from dataclasses import dataclass, field
from typing import List, Tuple

from ...config import logger
from ...geo.handlers import to_geo
from ...ovmodel.handlers import build_ov
from ...ovmodel.schemas import Contract, OperationalVolume
from ...planner.handlers import CollisionChecker
from ...planner.schemas import Environment, Route
from ...reach.handlers import BatchAnalysis, analyze_batch
from ...reach.schemas import VerificationReport
from ...sim.handlers import (
    init_states_from_batch,
    init_states_uniform,
    nominal_state_from_batch,
    nominal_state_uniform,
    run_batch,
)
from ...sim.schemas import State, TrajectorySet, UncertaintyConfig
from ...utils import ConfigError, PlanningTimeoutError, VerificationFailedError
from ..schemas import PipelineConfig


# -------------------------------------------------
@dataclass
class ContractGenerationService:
    """Builds the OV chain of one route, horizon by horizon.

    Every horizon: initial states (uniform around the origin for the first,
    resampled from the previous batch at t_d - delta afterwards), one batch
    of ``t_d`` seconds, a verified reach tube and the OV. Batches are kept so
    that ``run(from_horizon=k)`` regenerates only horizons k and later.
    """

    route: Route
    cfg: PipelineConfig
    batches: List[TrajectorySet] = field(init=False, default_factory=list)
    analyses: List[BatchAnalysis] = field(init=False, default_factory=list)
    ovs: List[OperationalVolume] = field(init=False, default_factory=list)
    uncertainty: UncertaintyConfig = field(init=False)

    # -------------------------------------------------
    def __post_init__(self):
        unc = self.cfg.uncertainty
        # The resample window must fit inside the batch: c <= delta.
        self.uncertainty = unc.model_copy(
            update={"resample_window_c": min(unc.resample_window_c, self.cfg.delta)}
        )

    # -------------------------------------------------
    @property
    def reports(self) -> List[VerificationReport]:
        return [a.report for a in self.analyses]

    # -------------------------------------------------
    @property
    def contract(self) -> Contract:
        return Contract(
            ovs=list(self.ovs),
            route_id=self.route.route_id,
            aircraft_id=self.cfg.aircraft.name,
        )

    # -------------------------------------------------
    def reset_route(self, route: Route, from_horizon: int) -> None:
        """Swaps in a repaired route and forgets horizons from ``from_horizon`` on."""
        self.route = route
        self._truncate(from_horizon)

    # -------------------------------------------------
    def _truncate(self, from_horizon: int) -> None:
        keep = max(0, min(int(from_horizon), len(self.ovs)))
        del self.batches[keep:]
        del self.analyses[keep:]
        del self.ovs[keep:]

    # -------------------------------------------------
    def _finished(self, traj: TrajectorySet) -> bool:
        return traj.finished_fraction() >= self.cfg.terminal_quorum

    # -------------------------------------------------
    def _initial_states(self, h: int) -> Tuple[List[State], State]:
        n = self.cfg.n_aircraft
        unc = self.uncertainty
        if h == 0:
            origin = to_geo(self.route.projection, self.route.origin)
            heading = self.route.leg_heading(1)
            t = self.route.departure_time
            states = init_states_uniform(origin, heading, unc, n, t=t, batch_key=0)
            return states, nominal_state_uniform(origin, heading, unc, t=t)
        prev = self.batches[h - 1]
        prev_ov = self.ovs[h - 1]
        offset = self.cfg.horizon_stride
        region = prev_ov.entries[prev_ov.entry_index(prev.t0 + offset)].region
        states = init_states_from_batch(
            prev,
            offset,
            unc,
            n,
            region=region,
            margin=self.cfg.resample_margin,
            route=self.route,
            batch_key=h,
        )
        return states, nominal_state_from_batch(prev, offset, unc, route=self.route)

    # -------------------------------------------------
    def generate_horizon(self, h: int) -> OperationalVolume:
        states, nominal = self._initial_states(h)
        traj = run_batch(
            states,
            self.route,
            self.cfg.aircraft,
            self.uncertainty,
            self.cfg.t_d,
            nominal=nominal,
            batch_key=h,
        )
        analysis = analyze_batch(
            traj,
            self.uncertainty,
            training_size=self.cfg.training_size,
            threshold=self.cfg.verification_threshold,
        )
        if not analysis.report.passed:
            logger.warning(
                f"Horizon {h}: tube holds {analysis.report.inclusion_ratio:.2%} of "
                f"the holdout, below {self.cfg.verification_threshold:.0%}"
            )
            raise VerificationFailedError(
                f"Reach tube of horizon {h} failed verification", horizon=h
            )
        ov = build_ov(analysis.tube, traj, self.cfg.delta, self.cfg.cell_size, index=h)
        self.batches.append(traj)
        self.analyses.append(analysis)
        self.ovs.append(ov)
        logger.info(
            f"Horizon {h}: OV over [{ov.t0:.0f}, {ov.t_end:.0f}] s, "
            f"{traj.finished_fraction():.0%} of the batch finished"
        )
        return ov

    # -------------------------------------------------
    def run(self, from_horizon: int = 0) -> Contract:
        self._truncate(from_horizon)
        if self.batches and self._finished(self.batches[-1]):
            return self.contract
        h = len(self.ovs)
        while True:
            if h >= self.cfg.max_horizons:
                raise PlanningTimeoutError(
                    f"Batch did not reach the terminal waypoint within {h} horizons"
                )
            self.generate_horizon(h)
            if self._finished(self.batches[-1]):
                break
            h += 1
        return self.contract


# -------------------------------------------------
def generate_contract(route: Route, env: Environment, cfg: PipelineConfig) -> Contract:
    if not CollisionChecker(env.static_only()).path_free(route.xy()):
        raise ConfigError(f"Route {route.route_id} crosses a no-fly zone")
    return ContractGenerationService(route=route, cfg=cfg).run()
