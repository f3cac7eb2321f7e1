__all__ = [
    "PipelineConfig",
    "PlanStatus",
    "PlanResult",
    "RoundTelemetry",
    "RunManifest",
]

from typing import List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from ...config import settings
from ...ovmodel.schemas import Contract
from ...planner.handlers import (
    DEFAULT_CONFLICT_THRESHOLD,
    DEFAULT_ITERATION_BUDGET,
    DEFAULT_MAX_NODES,
    DEFAULT_REPAIR_BUDGET,
    MAX_OPT_FACTOR,
    PlanTree,
)
from ...planner.schemas import Route
from ...reach.schemas import VerificationReport
from ...sim.schemas import AircraftModel, UncertaintyConfig


# --------------------------------------------------
class PipelineConfig(BaseModel):
    """Parameters of one plan-and-contract run."""

    t_d: int = Field(default=60, gt=0)
    delta: float = Field(default=15.0, ge=0.0)
    n_aircraft: int = Field(default_factory=lambda: settings.AIRLANE_N_AIRCRAFT)
    verification_threshold: float = Field(default=0.95, gt=0.0, le=1.0)
    conflict_threshold: float = Field(
        default=DEFAULT_CONFLICT_THRESHOLD, ge=0.0, lt=1.0
    )
    cell_size: float = Field(default=10.0, gt=0.0)
    step: float = Field(default=100.0, gt=0.0)
    max_nodes: int = Field(default=DEFAULT_MAX_NODES, ge=2)
    iteration_budget: int = Field(default=DEFAULT_ITERATION_BUDGET, gt=0)
    repair_budget: int = Field(default=DEFAULT_REPAIR_BUDGET, gt=0)
    max_repair_rounds: int = Field(default=10, ge=0)
    opt_factor: int = Field(default=MAX_OPT_FACTOR, ge=1)
    training_size: int = Field(default=16, ge=5)
    terminal_quorum: float = Field(default=0.5, gt=0.0, le=1.0)
    resample_margin: float = Field(default=25.0, ge=0.0)
    max_horizons: int = Field(default=200, gt=0)
    avoid_foreign: bool = False
    seed: int = Field(default_factory=lambda: settings.AIRLANE_SEED)
    aircraft: AircraftModel = Field(default_factory=AircraftModel)
    uncertainty: Optional[UncertaintyConfig] = None

    @field_validator("n_aircraft")
    @classmethod
    def validate_n_aircraft(cls, v: int) -> int:
        if v < 20:
            raise ValueError(f"n_aircraft must be at least 20, got {v}")
        return v

    @model_validator(mode="after")
    def check_config(self) -> "PipelineConfig":
        if not (0 <= self.delta < self.t_d):
            raise ValueError(f"delta must lie in [0, t_d), got {self.delta}")
        if self.n_aircraft < self.training_size + 2:
            raise ValueError("n_aircraft leaves no holdout after the training subset")
        if self.uncertainty is None:
            self.uncertainty = UncertaintyConfig(seed=self.seed)
        return self

    # --------------------------------------------------
    @property
    def horizon_stride(self) -> float:
        """Start-to-start spacing of consecutive OVs, t_d - delta."""
        return self.t_d - self.delta


# --------------------------------------------------
class PlanStatus(BaseModel):
    state: Literal["accepted", "failed"]
    reason: Optional[Literal["timeout", "verification", "resample"]] = None
    detail: str = ""

    @model_validator(mode="after")
    def check_reason(self) -> "PlanStatus":
        if (self.state == "failed") != (self.reason is not None):
            raise ValueError("A failed status needs a reason, an accepted one none")
        return self

    # --------------------------------------------------
    @property
    def accepted(self) -> bool:
        return self.state == "accepted"

    # --------------------------------------------------
    def __str__(self) -> str:
        return self.state if self.accepted else f"failed({self.reason})"


# --------------------------------------------------
class RoundTelemetry(BaseModel):
    round: int
    stage: Literal["candidate", "conflict", "contract", "nfz"]
    route_length: float
    n_waypoints: int
    n_conflicts: int = 0
    n_nfz_violations: int = 0
    n_ovs: int = 0
    first_horizon: int = 0
    reconnected: Optional[bool] = None


# --------------------------------------------------
class PlanResult(BaseModel):
    """Outcome of one run. ``tree`` is the final planning tree, kept out of
    dumps."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    route: Optional[Route] = None
    contract: Contract = Field(default_factory=Contract)
    verification: List[VerificationReport] = []
    repairs: int = 0
    status: PlanStatus
    rounds: List[RoundTelemetry] = []
    tree: Optional[PlanTree] = Field(default=None, exclude=True, repr=False)


# --------------------------------------------------
class RunManifest(BaseModel):
    version: str
    seed: int
    status: str
    repairs: int
    config: PipelineConfig
    n_ovs: int
    route_length: Optional[float] = None
    verification: List[VerificationReport] = []
    rounds: List[RoundTelemetry] = []
