__all__ = [
    "DiscrepancySegment",
    "AxisDiscrepancy",
    "DiscrepancyModel",
    "ReachTube",
    "VerificationReport",
    "AXES",
]

import math
from typing import List

import numpy as np
from pydantic import BaseModel, Field, model_validator

from ...ovmodel.schemas import Box3D

# Normalized axis order used throughout reachability.
AXES = ("lat", "lon", "alt")


# --------------------------------------------------
class DiscrepancySegment(BaseModel):
    """Bound on ``[start, next start)``: r0 * K * exp(gamma * (t - start))."""

    start: float = Field(ge=0.0)
    K: float = Field(ge=1.0)
    gamma: float


# --------------------------------------------------
class AxisDiscrepancy(BaseModel):
    r0: float = Field(gt=0.0)
    segments: List[DiscrepancySegment] = Field(min_length=1)

    @model_validator(mode="after")
    def check_segments(self) -> "AxisDiscrepancy":
        starts = [s.start for s in self.segments]
        if starts[0] != 0.0 or any(b <= a for a, b in zip(starts, starts[1:])):
            raise ValueError("Segments must start at 0 and be strictly increasing")
        return self

    # --------------------------------------------------
    def bound(self, t: float | np.ndarray) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        starts = np.array([s.start for s in self.segments])
        idx = np.clip(np.searchsorted(starts, t, side="right") - 1, 0, len(starts) - 1)
        K = np.array([s.K for s in self.segments])[idx]
        gamma = np.array([s.gamma for s in self.segments])[idx]
        return self.r0 * K * np.exp(gamma * (t - starts[idx]))


# --------------------------------------------------
class DiscrepancyModel(BaseModel):
    """Per-axis piecewise exponential deviation bound, normalized units."""

    axes: List[AxisDiscrepancy] = Field(min_length=3, max_length=3)
    duration: float = Field(gt=0.0)

    # --------------------------------------------------
    def bound(self, t: float | np.ndarray) -> np.ndarray:
        """Bound at ``t`` (seconds since horizon start); shape (..., 3)."""
        return np.stack([axis.bound(t) for axis in self.axes], axis=-1)

    # --------------------------------------------------
    def scaled(self, factor: float) -> "DiscrepancyModel":
        return self.model_copy(
            update={
                "axes": [
                    axis.model_copy(update={"r0": axis.r0 * factor})
                    for axis in self.axes
                ]
            }
        )


# --------------------------------------------------
class ReachTube(BaseModel):
    segments: List[Box3D]
    t0: float
    duration: int = Field(gt=0)

    @model_validator(mode="after")
    def check_segments(self) -> "ReachTube":
        if len(self.segments) != self.duration:
            raise ValueError("A reach tube holds exactly one box per second")
        for box in self.segments:
            if min(box.extent) <= 0:
                raise ValueError("Reach tube boxes must have positive extent")
        return self

    # --------------------------------------------------
    def segment_index(self, t: float) -> int:
        k = math.floor(t - self.t0 + 1e-9)
        return max(0, min(k, self.duration - 1))

    # --------------------------------------------------
    def bounds_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        lo = np.array([[b.xmin, b.ymin, b.zmin] for b in self.segments])
        hi = np.array([[b.xmax, b.ymax, b.zmax] for b in self.segments])
        return lo, hi


# --------------------------------------------------
class VerificationReport(BaseModel):
    total_points: int = Field(ge=0)
    included_points: int = Field(ge=0)
    inclusion_ratio: float = Field(ge=0.0, le=1.0)
    threshold: float = 0.95
    passed: bool = Field(serialization_alias="pass")
