__all__ = ["Box3D"]

from typing import List, Tuple

import numpy as np
import shapely
from pydantic import BaseModel, model_validator


# --------------------------------------------------
class Box3D(BaseModel):
    """Axis aligned box in local meters."""

    xmin: float
    ymin: float
    zmin: float
    xmax: float
    ymax: float
    zmax: float

    @model_validator(mode="after")
    def check_extent(self) -> "Box3D":
        if self.xmax < self.xmin or self.ymax < self.ymin or self.zmax < self.zmin:
            raise ValueError("Box max corner must not be below its min corner")
        return self

    # --------------------------------------------------
    @classmethod
    def from_list(cls, values: List[float]) -> "Box3D":
        xmin, ymin, zmin, xmax, ymax, zmax = (float(v) for v in values)
        return cls(xmin=xmin, ymin=ymin, zmin=zmin, xmax=xmax, ymax=ymax, zmax=zmax)

    # --------------------------------------------------
    @classmethod
    def from_arrays(cls, lo: np.ndarray, hi: np.ndarray) -> "Box3D":
        lo, hi = np.asarray(lo, dtype=float), np.asarray(hi, dtype=float)
        return cls.from_list([*lo, *hi])

    # --------------------------------------------------
    def as_list(self) -> List[float]:
        return [self.xmin, self.ymin, self.zmin, self.xmax, self.ymax, self.zmax]

    # --------------------------------------------------
    @property
    def extent(self) -> Tuple[float, float, float]:
        return (self.xmax - self.xmin, self.ymax - self.ymin, self.zmax - self.zmin)

    # --------------------------------------------------
    def contains(self, x: float, y: float, z: float | None = None) -> bool:
        inside = self.xmin <= x <= self.xmax and self.ymin <= y <= self.ymax
        if z is None:
            return inside
        return inside and self.zmin <= z <= self.zmax

    # --------------------------------------------------
    def distance_2d(self, x: float, y: float) -> float:
        dx = max(self.xmin - x, 0.0, x - self.xmax)
        dy = max(self.ymin - y, 0.0, y - self.ymax)
        return float(np.hypot(dx, dy))

    # --------------------------------------------------
    def footprint(self) -> shapely.Polygon:
        return shapely.box(self.xmin, self.ymin, self.xmax, self.ymax)

    # --------------------------------------------------
    def union(self, other: "Box3D") -> "Box3D":
        return Box3D(
            xmin=min(self.xmin, other.xmin),
            ymin=min(self.ymin, other.ymin),
            zmin=min(self.zmin, other.zmin),
            xmax=max(self.xmax, other.xmax),
            ymax=max(self.ymax, other.ymax),
            zmax=max(self.zmax, other.zmax),
        )
