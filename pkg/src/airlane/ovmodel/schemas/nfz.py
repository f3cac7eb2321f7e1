__all__ = ["NoFlyZone"]

from typing import List, Tuple

import shapely
from pydantic import BaseModel, Field, field_validator, model_validator

from ...geo.schemas import LocalPoint


# --------------------------------------------------
class NoFlyZone(BaseModel):
    id: str
    polygon: List[LocalPoint] = Field(min_length=3)
    alt_range: Tuple[float, float] = (0.0, 10_000.0)

    @field_validator("alt_range")
    @classmethod
    def validate_alt_range(cls, v: Tuple[float, float]) -> Tuple[float, float]:
        if v[1] < v[0]:
            raise ValueError("NFZ altitude range is reversed")
        return v

    @model_validator(mode="after")
    def check_simple(self) -> "NoFlyZone":
        ring = shapely.LinearRing([(p.x, p.y) for p in self.polygon])
        if not ring.is_simple:
            raise ValueError(f"NFZ {self.id} polygon self-intersects")
        if shapely.Polygon(ring).area <= 0:
            raise ValueError(f"NFZ {self.id} polygon has no area")
        return self

    # --------------------------------------------------
    @classmethod
    def from_rectangle(
        cls,
        id: str,
        xmin: float,
        ymin: float,
        xmax: float,
        ymax: float,
        alt_range: Tuple[float, float] = (0.0, 10_000.0),
    ) -> "NoFlyZone":
        corners = [(xmin, ymin), (xmax, ymin), (xmax, ymax), (xmin, ymax)]
        return cls(
            id=id,
            polygon=[LocalPoint(x=x, y=y) for x, y in corners],
            alt_range=alt_range,
        )

    # --------------------------------------------------
    def shape(self) -> shapely.Polygon:
        return shapely.Polygon([(p.x, p.y) for p in self.polygon])

    # --------------------------------------------------
    def overlaps_altitude(self, zmin: float, zmax: float) -> bool:
        return zmin <= self.alt_range[1] and zmax >= self.alt_range[0]
