__all__ = ["GeoPoint", "LocalPoint", "Projection", "NormalizationBox"]

import math
from typing import Tuple

from pydantic import BaseModel, Field, field_validator, model_validator


# --------------------------------------------------
class GeoPoint(BaseModel):
    lat: float = Field(ge=-90.0, le=90.0)
    lon: float = Field(ge=-180.0, le=180.0)
    alt: float = Field(default=0.0, ge=0.0)

    # --------------------------------------------------
    def as_tuple(self) -> Tuple[float, float, float]:
        return (self.lat, self.lon, self.alt)


# --------------------------------------------------
class LocalPoint(BaseModel):
    x: float
    y: float
    z: float = Field(default=0.0, ge=0.0)

    @field_validator("x", "y", "z")
    @classmethod
    def validate_finite(cls, v: float) -> float:
        if not math.isfinite(v):
            raise ValueError("Local coordinates must be finite")
        return v

    # --------------------------------------------------
    def as_tuple(self) -> Tuple[float, float, float]:
        return (self.x, self.y, self.z)

    # --------------------------------------------------
    def distance_2d(self, other: "LocalPoint") -> float:
        return math.hypot(other.x - self.x, other.y - self.y)


# --------------------------------------------------
class Projection(BaseModel):
    """Local flat-plane projection centred on ``origin``.

    Build it with ``geo.handlers.make_projection`` so the scale factors
    are the ones evaluated at the origin latitude.
    """

    origin: GeoPoint
    m_per_deg_lat: float = Field(gt=0.0)
    m_per_deg_lon: float = Field(gt=0.0)
    window_deg: float = Field(default=1.0, gt=0.0)


# --------------------------------------------------
class NormalizationBox(BaseModel):
    """Per-axis bounds in (lat, lon, alt) order."""

    mins: Tuple[float, float, float]
    maxs: Tuple[float, float, float]

    @model_validator(mode="after")
    def check_order(self) -> "NormalizationBox":
        for lo, hi in zip(self.mins, self.maxs):
            if not (math.isfinite(lo) and math.isfinite(hi)):
                raise ValueError("Normalization bounds must be finite")
            if hi < lo:
                raise ValueError("Normalization max must not be lower than min")
        return self

    # --------------------------------------------------
    @property
    def spans(self) -> Tuple[float, float, float]:
        """Per-axis divisor. Degenerate axes use a unit pseudo-span so they
        normalize to a constant 0.5 while staying invertible."""
        return tuple(
            (hi - lo) if hi > lo else 1.0 for lo, hi in zip(self.mins, self.maxs)
        )

    # --------------------------------------------------
    @property
    def degenerate(self) -> Tuple[bool, bool, bool]:
        return tuple(hi <= lo for lo, hi in zip(self.mins, self.maxs))
