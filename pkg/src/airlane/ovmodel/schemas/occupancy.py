__all__ = ["OccupancyGrid"]

import math
from typing import Tuple

import numpy as np
from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    field_serializer,
    field_validator,
    model_validator,
)

from ...geo.schemas import LocalPoint


# --------------------------------------------------
class OccupancyGrid(BaseModel):
    """Horizontal count grid. ``counts`` is (ny, nx), row 0 at ``origin.y``;
    cells are half open ``[origin + k * cell_size, origin + (k + 1) * cell_size)``."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    cell_size: float = Field(gt=0.0)
    origin: LocalPoint
    counts: np.ndarray
    n_total: int = Field(ge=0)

    @field_validator("counts", mode="before")
    @classmethod
    def validate_counts(cls, v) -> np.ndarray:
        arr = np.asarray(v, dtype=np.int64)
        if arr.ndim != 2:
            raise ValueError("Occupancy counts must be a 2D array")
        if (arr < 0).any():
            raise ValueError("Occupancy counts must be non negative")
        return arr

    @model_validator(mode="after")
    def check_total(self) -> "OccupancyGrid":
        if int(self.counts.sum()) > self.n_total:
            raise ValueError("Occupancy counts exceed the number of aircraft")
        return self

    @field_serializer("counts")
    def serialize_counts(self, counts: np.ndarray) -> list:
        return counts.tolist()

    # --------------------------------------------------
    @property
    def shape(self) -> Tuple[int, int]:
        return tuple(self.counts.shape)

    # --------------------------------------------------
    def cell_of(self, x: float, y: float) -> Tuple[int, int] | None:
        """(row, col) of the cell holding (x, y), or None outside the grid."""
        col = math.floor((x - self.origin.x) / self.cell_size)
        row = math.floor((y - self.origin.y) / self.cell_size)
        ny, nx = self.counts.shape
        if 0 <= row < ny and 0 <= col < nx:
            return row, col
        return None

    # --------------------------------------------------
    def fraction_at(self, x: float, y: float) -> float:
        cell = self.cell_of(x, y)
        if cell is None or self.n_total == 0:
            return 0.0
        return float(self.counts[cell]) / self.n_total

    # --------------------------------------------------
    def cell_bounds(self, row: int, col: int) -> Tuple[float, float, float, float]:
        x0 = self.origin.x + col * self.cell_size
        y0 = self.origin.y + row * self.cell_size
        return (x0, y0, x0 + self.cell_size, y0 + self.cell_size)
