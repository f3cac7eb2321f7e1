__all__ = ["PlanningService", "plan_and_contract"]

from dataclasses import dataclass, field
from typing import List, Optional, Sequence

from ...config import logger
from ...geo.schemas import LocalPoint
from ...ovmodel.schemas import Contract
from ...planner.handlers import (
    PlanTree,
    RepairOutcome,
    dynamic_obstacles_from_contracts,
    estimate_timed_route,
    find_conflicts,
    inflate_nfz,
    plan_candidate,
    repair_with_obstacle,
    rope_optimize,
    route_length,
    sever_and_repair,
)
from ...planner.schemas import Environment, Route
from ...utils import (
    InfeasibleResampleError,
    PlanningTimeoutError,
    RepairFailedError,
    VerificationFailedError,
)
from ..handlers import first_affected_horizon, nfz_violations, violation_margin
from ..schemas import PipelineConfig, PlanResult, PlanStatus, RoundTelemetry
from .contract_generation import ContractGenerationService


# -------------------------------------------------
@dataclass
class PlanningService:
    """Plan, deconflict and contract one route.

    Round loop: the current route is checked against the foreign contracts
    first; a conflict severs the tree around the foreign OV. A clean route
    gets its contract (regenerated from the first affected horizon after a
    reroute) and every OV is compared with the no-fly zones; a violation
    adds the NFZ, inflated by the violating boxes' half-extent, as an
    obstacle and repairs. Each repair costs one of ``max_repair_rounds``.
    With ``avoid_foreign`` the candidate tree already steers clear of the
    foreign OVs, each one a dynamic obstacle active over its time window.
    """

    env: Environment
    cfg: PipelineConfig
    foreign: Sequence[Contract] = ()
    rounds: List[RoundTelemetry] = field(init=False, default_factory=list)
    repairs: int = field(init=False, default=0)
    route: Optional[Route] = field(init=False, default=None)
    tree: Optional[PlanTree] = field(init=False, default=None)
    work_env: Environment = field(init=False)
    generator: Optional[ContractGenerationService] = field(init=False, default=None)

    # -------------------------------------------------
    def __post_init__(self):
        self.work_env = self.env
        if self.cfg.avoid_foreign and self.foreign:
            moving = dynamic_obstacles_from_contracts(self.foreign)
            self.work_env = self.env.model_copy(
                update={"dynamic_obstacles": [*self.env.dynamic_obstacles, *moving]}
            )

    # -------------------------------------------------
    def _log_round(self, stage: str, **values) -> None:
        entry = RoundTelemetry(
            round=self.repairs,
            stage=stage,
            route_length=route_length(self.route),
            n_waypoints=len(self.route.waypoints),
            **values,
        )
        self.rounds.append(entry)
        logger.debug(f"Round {entry.round} [{stage}]: {entry.model_dump()}")

    # -------------------------------------------------
    def _failed(self, reason: str, detail: str) -> PlanResult:
        logger.warning(f"Planning failed ({reason}): {detail}")
        generator = self.generator
        return PlanResult(
            route=self.route,
            contract=generator.contract if generator else Contract(),
            verification=generator.reports if generator else [],
            repairs=self.repairs,
            status=PlanStatus(state="failed", reason=reason, detail=detail),
            rounds=self.rounds,
            tree=self.tree,
        )

    # -------------------------------------------------
    def _adopt(self, outcome: RepairOutcome) -> Route:
        old = self.route
        self.tree = outcome.tree
        self.work_env = outcome.env
        self.route = rope_optimize(outcome.route, self.work_env, self.cfg.opt_factor)
        self.repairs += 1
        return old

    # -------------------------------------------------
    def _repair_args(self, origin: LocalPoint, goal: LocalPoint) -> dict:
        return dict(
            step=self.cfg.step,
            origin=origin,
            goal=goal,
            template=self.route,
            iteration_budget=self.cfg.repair_budget,
        )

    # -------------------------------------------------
    def plan_and_contract(
        self, origin: LocalPoint, goal: LocalPoint, **route_fields
    ) -> PlanResult:
        try:
            candidate = plan_candidate(
                self.work_env,
                origin,
                goal,
                self.cfg.step,
                max_nodes=self.cfg.max_nodes,
                iteration_budget=self.cfg.iteration_budget,
                seed=self.cfg.seed,
                **route_fields,
            )
        except PlanningTimeoutError as e:
            return self._failed("timeout", str(e))
        self.tree = candidate.tree
        self.route = candidate.route
        self._log_round("candidate")
        self.route = rope_optimize(
            candidate.route, self.work_env, self.cfg.opt_factor
        )
        logger.info(
            f"Candidate route {route_length(candidate.route):.0f} m, "
            f"optimized {route_length(self.route):.0f} m"
        )

        first_horizon = 0
        while True:
            timed = estimate_timed_route(self.route)
            conflicts = find_conflicts(timed, self.foreign, self.cfg.conflict_threshold)
            if conflicts:
                self._log_round("conflict", n_conflicts=len(conflicts))
                if self.repairs >= self.cfg.max_repair_rounds:
                    left = len(conflicts)
                    return self._failed(
                        "timeout", f"{left} conflicts left after the last round"
                    )
                try:
                    outcome = sever_and_repair(
                        self.tree,
                        conflicts[0],
                        self.work_env,
                        **self._repair_args(origin, goal),
                    )
                except RepairFailedError as e:
                    return self._failed("timeout", str(e))
                old = self._adopt(outcome)
                first_horizon = min(
                    first_horizon, first_affected_horizon(old, self.route, self.cfg)
                )
                continue

            regenerated_from = int(first_horizon)
            try:
                if self.generator is None:
                    self.generator = ContractGenerationService(self.route, self.cfg)
                    contract = self.generator.run()
                else:
                    self.generator.reset_route(self.route, regenerated_from)
                    contract = self.generator.run(regenerated_from)
            except VerificationFailedError as e:
                return self._failed("verification", str(e))
            except InfeasibleResampleError as e:
                return self._failed("resample", str(e))
            except PlanningTimeoutError as e:
                return self._failed("timeout", str(e))
            first_horizon = len(contract.ovs)

            violations = nfz_violations(contract, self.env.nfzs)
            self._log_round(
                "contract",
                n_ovs=len(contract.ovs),
                n_nfz_violations=sum(map(len, violations.values())),
                first_horizon=regenerated_from,
            )
            if not violations:
                logger.info(
                    f"Route accepted after {self.repairs} repairs with "
                    f"{len(contract.ovs)} OVs"
                )
                return PlanResult(
                    route=self.route,
                    contract=contract,
                    verification=self.generator.reports,
                    repairs=self.repairs,
                    status=PlanStatus(state="accepted"),
                    rounds=self.rounds,
                    tree=self.tree,
                )
            if self.repairs >= self.cfg.max_repair_rounds:
                return self._failed(
                    "timeout", f"OVs still violate no-fly zones {sorted(violations)}"
                )

            by_id = {nfz.id: nfz for nfz in self.env.nfzs}
            obstacles = [
                inflate_nfz(
                    by_id[nfz_id],
                    violation_margin(contract, by_id[nfz_id], hits),
                    suffix=f"r{self.repairs}",
                )
                for nfz_id, hits in violations.items()
            ]
            try:
                outcome = repair_with_obstacle(
                    self.tree,
                    obstacles,
                    self.work_env,
                    **self._repair_args(origin, goal),
                )
            except RepairFailedError as e:
                return self._failed("timeout", str(e))
            old = self._adopt(outcome)
            first_violation = min(min(hits) for hits in violations.values())
            first_horizon = int(
                min(first_violation, first_affected_horizon(old, self.route, self.cfg))
            )
            self._log_round(
                "nfz",
                n_nfz_violations=sum(map(len, violations.values())),
                first_horizon=first_horizon,
                reconnected=outcome.reconnected,
            )
            logger.info(
                f"Repair round {self.repairs}: rerouted around {sorted(violations)}, "
                f"regenerating from horizon {first_horizon}"
            )


# -------------------------------------------------
def plan_and_contract(
    env: Environment,
    origin: LocalPoint,
    goal: LocalPoint,
    foreign: Sequence[Contract],
    cfg: PipelineConfig,
    **route_fields,
) -> PlanResult:
    return PlanningService(env=env, cfg=cfg, foreign=foreign).plan_and_contract(
        origin, goal, **route_fields
    )
