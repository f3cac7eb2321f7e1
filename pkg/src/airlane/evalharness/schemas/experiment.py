__all__ = [
    "Sweep",
    "ExperimentSpec",
    "ExperimentRow",
    "ExperimentReport",
    "SUITES",
    "SWEEP_PARAMETERS",
]

from typing import Any, Dict, List, Literal, Optional, Tuple

import pandas as pd
from pydantic import BaseModel, Field, field_validator, model_validator

from ...config import settings
from ...planner.handlers import MAX_OPT_FACTOR
from .scenario import ROUTE_SCENARIOS

SUITES = ("inclusion", "sensitivity", "planning")
SWEEP_PARAMETERS = {
    "sensitivity": ("speed_range", "pos_jitter", "alt_range"),
    "planning": ("step",),
}

Suite = Literal["inclusion", "sensitivity", "planning"]
SweepValue = float | Tuple[float, float]


# --------------------------------------------------
class Sweep(BaseModel):
    parameter: str
    values: List[SweepValue] = Field(min_length=1)


# --------------------------------------------------
class ExperimentSpec(BaseModel):
    suite: Suite
    scenario: str = "simple"
    sweep: Optional[Sweep] = None
    n_aircraft: int = Field(default_factory=lambda: settings.AIRLANE_N_AIRCRAFT, ge=20)
    seeds: List[int] = Field(
        default_factory=lambda: [settings.AIRLANE_SEED], min_length=1
    )
    t_d: int = Field(default=60, gt=0)
    delta: float = Field(default=15.0, ge=0.0)
    threshold: float = Field(default=0.95, gt=0.0, le=1.0)
    opt_factors: List[int] = Field(
        default_factory=lambda: [MAX_OPT_FACTOR], min_length=1
    )
    max_nodes: Optional[int] = Field(default=None, ge=2)
    max_horizons: int = Field(default=200, gt=0)

    @field_validator("seeds")
    @classmethod
    def validate_seeds(cls, v: List[int]) -> List[int]:
        if len(set(v)) != len(v):
            raise ValueError("Seeds must be unique")
        return v

    @model_validator(mode="after")
    def check_spec(self) -> "ExperimentSpec":
        if self.suite == "planning":
            if self.scenario == "simple":
                self.scenario = "reference_environment"
        elif self.scenario not in ROUTE_SCENARIOS and not self.scenario.endswith(
            ".json"
        ):
            raise ValueError(
                f"Scenario {self.scenario!r} is not one of {ROUTE_SCENARIOS}"
            )
        if self.sweep is None:
            self.sweep = default_sweep(self.suite)
        if self.sweep is not None:
            allowed = SWEEP_PARAMETERS.get(self.suite, ())
            if self.sweep.parameter not in allowed:
                raise ValueError(
                    f"Suite {self.suite} cannot sweep {self.sweep.parameter!r}"
                )
        if not (0 <= self.delta < self.t_d):
            raise ValueError(f"delta must lie in [0, t_d), got {self.delta}")
        return self


# --------------------------------------------------
def default_sweep(suite: str) -> Optional[Sweep]:
    if suite == "sensitivity":
        return Sweep(parameter="pos_jitter", values=[10.0, 50.0, 100.0])
    if suite == "planning":
        return Sweep(parameter="step", values=[50.0, 100.0, 150.0, 200.0])
    return None


# --------------------------------------------------
class ExperimentRow(BaseModel):
    """One (seed, sweep point) measurement; metrics depend on the suite."""

    suite: Suite
    scenario: str
    seed: int
    parameter: Optional[str] = None
    value: Optional[str] = None
    status: str = "ok"
    total_points: Optional[int] = Field(default=None, ge=0)
    included_points: Optional[int] = Field(default=None, ge=0)
    inclusion_pct: Optional[float] = Field(default=None, ge=0.0, le=100.0)
    n_ovs: Optional[int] = Field(default=None, ge=0)
    mean_area_km2: Optional[float] = Field(default=None, ge=0.0)
    opt_factor: Optional[int] = None
    max_nodes: Optional[int] = None
    wall_time_s: Optional[float] = Field(default=None, ge=0.0)
    iterations: Optional[int] = None
    candidate_length: Optional[float] = None
    optimized_length: Optional[float] = None
    delta_length: Optional[float] = None

    @field_validator("value", mode="before")
    @classmethod
    def validate_value(cls, v: Any) -> Optional[str]:
        # CSV readers hand sweep labels back as numbers
        if v is None or isinstance(v, str):
            return v
        return f"{v:g}"


# --------------------------------------------------
class ExperimentReport(BaseModel):
    spec: ExperimentSpec
    rows: List[ExperimentRow] = []
    aggregates: List[Dict[str, Any]] = []

    # --------------------------------------------------
    def to_dataframe(self) -> pd.DataFrame:
        df = pd.DataFrame([row.model_dump() for row in self.rows])
        return df.dropna(axis=1, how="all")

    # --------------------------------------------------
    def aggregates_dataframe(self) -> pd.DataFrame:
        return pd.DataFrame(self.aggregates)
