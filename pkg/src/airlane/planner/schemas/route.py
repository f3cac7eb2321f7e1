__all__ = ["Route", "TimedWaypoint"]

import math
from typing import List, Optional, Tuple

from pydantic import BaseModel, Field, model_validator

from ...geo.handlers import make_projection
from ...geo.schemas import GeoPoint, LocalPoint, Projection


# --------------------------------------------------
def _default_projection() -> Projection:
    return make_projection(GeoPoint(lat=0.0, lon=0.0, alt=0.0))


# --------------------------------------------------
class Route(BaseModel):
    """Waypoints in the local plane of ``projection``.

    ``speed_bounds`` is the admissible ground speed interval; a fixed
    cruise speed is the degenerate interval (v, v). ``waypoint_speeds``
    optionally constrains the speed flown on the leg towards each waypoint.
    """

    waypoints: List[LocalPoint] = Field(min_length=2)
    departure_time: float = Field(default=0.0, ge=0.0)
    speed_bounds: Tuple[float, float] = (18.0, 18.0)
    cruise_speed: Optional[float] = None
    waypoint_speeds: Optional[List[Optional[float]]] = None
    projection: Projection = Field(default_factory=_default_projection)
    route_id: str = "route"

    @model_validator(mode="after")
    def check_route(self) -> "Route":
        if self.cruise_speed is not None:
            self.speed_bounds = (self.cruise_speed, self.cruise_speed)
        if self.speed_bounds[1] < self.speed_bounds[0]:
            raise ValueError("Speed bounds are reversed")
        for a, b in zip(self.waypoints, self.waypoints[1:]):
            if a.x == b.x and a.y == b.y and a.z == b.z:
                raise ValueError("Consecutive waypoints must be distinct")
        if self.waypoint_speeds is not None and len(self.waypoint_speeds) != len(
            self.waypoints
        ):
            raise ValueError("waypoint_speeds needs one value per waypoint")
        return self

    # --------------------------------------------------
    @property
    def is_fixed_speed(self) -> bool:
        return self.speed_bounds[0] == self.speed_bounds[1]

    # --------------------------------------------------
    @property
    def origin(self) -> LocalPoint:
        return self.waypoints[0]

    # --------------------------------------------------
    @property
    def destination(self) -> LocalPoint:
        return self.waypoints[-1]

    # --------------------------------------------------
    def leg_heading(self, leg: int = 1) -> float:
        """Bearing in degrees clockwise from north of the leg ending at ``leg``."""
        a, b = self.waypoints[leg - 1], self.waypoints[leg]
        return math.degrees(math.atan2(b.x - a.x, b.y - a.y)) % 360.0

    # --------------------------------------------------
    def xy(self) -> List[Tuple[float, float]]:
        return [(p.x, p.y) for p in self.waypoints]


# --------------------------------------------------
class TimedWaypoint(BaseModel):
    waypoint: LocalPoint
    distance: float
    earliest_arrival: float
    latest_arrival: float
