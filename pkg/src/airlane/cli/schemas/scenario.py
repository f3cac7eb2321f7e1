__all__ = ["GeoNoFlyZone", "ScenarioFile"]

from typing import Any, Dict, List, Optional, Tuple

import numpy as np
from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    PrivateAttr,
    ValidationError,
    field_validator,
    model_validator,
)

from ...geo.handlers import make_projection, to_local
from ...geo.schemas import GeoPoint, LocalPoint
from ...ovmodel.schemas import NoFlyZone
from ...pipeline.schemas import PipelineConfig
from ...planner.schemas import Environment
from ...sim.schemas import AircraftModel, UncertaintyConfig


# --------------------------------------------------
class GeoNoFlyZone(BaseModel):
    """No-fly zone as given in a scenario file: a (lat, lon) ring."""

    model_config = ConfigDict(extra="forbid")

    id: str
    polygon: List[GeoPoint] = Field(min_length=3)
    alt_range: Tuple[float, float] = (0.0, 10_000.0)


# --------------------------------------------------
def _first_message(e: ValidationError) -> str:
    err = e.errors()[0]
    loc = ".".join(str(part) for part in err["loc"])
    return f"{loc}: {err['msg']}" if loc else err["msg"]


# --------------------------------------------------
class ScenarioFile(BaseModel):
    """Input of ``airlane plan``.

    Geographic inputs are projected onto the flat plane centred on
    ``origin``; the environment bounds are the bounding box of origin,
    destination and every NFZ vertex, grown by ``bounds_margin`` meters.
    ``pipeline`` holds PipelineConfig overrides by field name.
    """

    model_config = ConfigDict(extra="forbid")

    name: str = "route"
    origin: GeoPoint
    destination: GeoPoint
    bounds_margin: float = Field(default=1_000.0, ge=0.0)
    nfzs: List[GeoNoFlyZone] = []
    foreign_contracts: List[str] = []
    aircraft: str | AircraftModel = "octocopter"
    uncertainty: Optional[UncertaintyConfig] = None
    pipeline: Dict[str, Any] = {}
    departure_time: float = Field(default=0.0, ge=0.0)
    speed_bounds: Optional[Tuple[float, float]] = None
    seed: Optional[int] = None

    _environment: Environment = PrivateAttr()
    _config: PipelineConfig = PrivateAttr()

    @field_validator("aircraft")
    @classmethod
    def validate_aircraft(cls, v: str | AircraftModel) -> AircraftModel:
        if isinstance(v, str):
            return AircraftModel.preset(v)
        return v

    @field_validator("pipeline")
    @classmethod
    def validate_pipeline(cls, v: Dict[str, Any]) -> Dict[str, Any]:
        owned = {"seed", "aircraft", "uncertainty"}
        unknown = sorted(
            k for k in v if k not in PipelineConfig.model_fields or k in owned
        )
        if unknown:
            raise ValueError(f"Unsupported pipeline overrides {unknown}")
        return v

    @model_validator(mode="after")
    def check_scenario(self) -> "ScenarioFile":
        projection = make_projection(self.origin)
        start = to_local(projection, self.origin)
        goal = to_local(projection, self.destination)
        nfzs = [
            NoFlyZone(
                id=zone.id,
                polygon=[to_local(projection, p) for p in zone.polygon],
                alt_range=zone.alt_range,
            )
            for zone in self.nfzs
        ]
        xy = np.array(
            [(start.x, start.y), (goal.x, goal.y)]
            + [(p.x, p.y) for nfz in nfzs for p in nfz.polygon]
        )
        lo = xy.min(axis=0) - self.bounds_margin
        hi = xy.max(axis=0) + self.bounds_margin
        try:
            self._environment = Environment(
                bounds=(float(lo[0]), float(lo[1]), float(hi[0]), float(hi[1])),
                nfzs=nfzs,
                projection=projection,
                origin=start,
                goal=goal,
            )
            self._config = self.pipeline_config()
        except ValidationError as e:
            raise ValueError(_first_message(e))
        return self

    # --------------------------------------------------
    def environment(self) -> Environment:
        return self._environment

    # --------------------------------------------------
    @property
    def config(self) -> PipelineConfig:
        return self._config

    # --------------------------------------------------
    @property
    def start(self) -> LocalPoint:
        return self._environment.origin

    # --------------------------------------------------
    @property
    def goal(self) -> LocalPoint:
        return self._environment.goal

    # --------------------------------------------------
    def pipeline_config(self, **overrides) -> PipelineConfig:
        """Scenario values, then ``overrides`` (command-line flags) on top.

        The uncertainty stream follows the final pipeline seed.
        """
        values: Dict[str, Any] = {"aircraft": self.aircraft, **self.pipeline}
        if self.seed is not None:
            values["seed"] = self.seed
        values.update({k: v for k, v in overrides.items() if v is not None})
        cfg = PipelineConfig.model_validate(values)
        uncertainty = self.uncertainty or UncertaintyConfig(seed=cfg.seed)
        return cfg.model_copy(
            update={"uncertainty": uncertainty.model_copy(update={"seed": cfg.seed})}
        )

    # --------------------------------------------------
    def route_fields(self) -> Dict[str, Any]:
        speed = self.aircraft.cruise_tas
        return dict(
            departure_time=self.departure_time,
            speed_bounds=self.speed_bounds or (speed, speed),
            route_id=self.name,
        )
