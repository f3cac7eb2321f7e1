__all__ = ["RouteScenario", "PlanningScenario", "ROUTE_SCENARIOS"]

from typing import List, Optional, Tuple

from pydantic import BaseModel, Field, model_validator

from ...geo.handlers import make_projection
from ...geo.schemas import GeoPoint, LocalPoint
from ...ovmodel.schemas import NoFlyZone
from ...planner.schemas import Environment, Route
from ...sim.schemas import AIRCRAFT_PRESETS, AircraftModel

ROUTE_SCENARIOS = ("simple", "circular", "complex")


# --------------------------------------------------
class RouteScenario(BaseModel):
    """A fixed route flown by the contract experiments, waypoints in meters
    east/north of ``origin``."""

    name: str
    description: str = ""
    origin: GeoPoint
    aircraft: str = "octocopter"
    speed_bounds: Tuple[float, float] = (18.0, 18.0)
    expected_minutes: Optional[float] = None
    waypoints: List[LocalPoint] = Field(min_length=2)
    waypoint_speeds: Optional[List[Optional[float]]] = None

    @model_validator(mode="after")
    def check_aircraft(self) -> "RouteScenario":
        if self.aircraft not in AIRCRAFT_PRESETS:
            raise ValueError(f"Unknown aircraft preset {self.aircraft!r}")
        return self

    # --------------------------------------------------
    def route(self, departure_time: float = 0.0) -> Route:
        return Route(
            waypoints=self.waypoints,
            departure_time=departure_time,
            speed_bounds=self.speed_bounds,
            waypoint_speeds=self.waypoint_speeds,
            projection=make_projection(self.origin),
            route_id=self.name,
        )

    # --------------------------------------------------
    def aircraft_model(self, **overrides) -> AircraftModel:
        return AircraftModel.preset(self.aircraft, **overrides)


# --------------------------------------------------
class PlanningScenario(BaseModel):
    """Static planning environment: bounds and NFZs in local meters."""

    name: str
    description: str = ""
    origin: GeoPoint
    bounds: Tuple[float, float, float, float]
    start: LocalPoint
    goal: LocalPoint
    direct_distance: float = Field(gt=0.0)
    nfzs: List[NoFlyZone] = []

    # --------------------------------------------------
    def environment(self) -> Environment:
        return Environment(
            bounds=self.bounds,
            nfzs=self.nfzs,
            projection=make_projection(self.origin),
            origin=self.start,
            goal=self.goal,
        )
