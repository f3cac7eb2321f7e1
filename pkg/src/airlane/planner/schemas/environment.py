__all__ = ["Environment", "DynamicObstacle"]

from typing import List, Optional, Tuple

import shapely
from pydantic import BaseModel, Field, model_validator

from ...geo.schemas import LocalPoint, Projection
from ...ovmodel.schemas import Box3D, NoFlyZone
from .route import _default_projection


# --------------------------------------------------
class DynamicObstacle(BaseModel):
    """Footprint of a foreign OV, present only during ``active``."""

    footprint: Box3D
    active: Tuple[float, float]
    source: str = ""


# --------------------------------------------------
class Environment(BaseModel):
    bounds: Tuple[float, float, float, float]
    nfzs: List[NoFlyZone] = []
    dynamic_obstacles: List[DynamicObstacle] = []
    projection: Projection = Field(default_factory=_default_projection)
    origin: Optional[LocalPoint] = None
    goal: Optional[LocalPoint] = None

    @model_validator(mode="after")
    def check_environment(self) -> "Environment":
        xmin, ymin, xmax, ymax = self.bounds
        if xmax <= xmin or ymax <= ymin:
            raise ValueError("Environment bounds must have positive area")
        for label, p in (("origin", self.origin), ("goal", self.goal)):
            if p is None:
                continue
            problem = self.endpoint_problem(p)
            if problem:
                raise ValueError(f"{label} {problem}")
        return self

    # --------------------------------------------------
    def in_bounds(self, x: float, y: float) -> bool:
        xmin, ymin, xmax, ymax = self.bounds
        return xmin <= x <= xmax and ymin <= y <= ymax

    # --------------------------------------------------
    def endpoint_problem(self, p: LocalPoint) -> str | None:
        if not self.in_bounds(p.x, p.y):
            return "lies outside the environment bounds"
        point = shapely.Point(p.x, p.y)
        for nfz in self.nfzs:
            if nfz.shape().covers(point):
                return f"lies inside no-fly zone {nfz.id}"
        return None

    # --------------------------------------------------
    def with_nfz(self, nfz: NoFlyZone) -> "Environment":
        return self.model_copy(update={"nfzs": [*self.nfzs, nfz]})

    # --------------------------------------------------
    def static_only(self) -> "Environment":
        return self.model_copy(update={"dynamic_obstacles": []})
