__all__ = ["State", "UncertaintyConfig"]

import math
from typing import Tuple

from pydantic import BaseModel, Field, field_validator, model_validator

from ...config import settings
from ...geo.schemas import GeoPoint


# --------------------------------------------------
class State(BaseModel):
    t: float = Field(ge=0.0)
    pos: GeoPoint
    heading: float
    vs: float = 0.0
    tas: float = Field(ge=0.0)
    leg: int = Field(default=1, ge=0)

    @field_validator("heading")
    @classmethod
    def normalize_heading(cls, v: float) -> float:
        if not math.isfinite(v):
            raise ValueError("Heading must be finite")
        v = v % 360.0
        return 0.0 if v >= 360.0 else v


# --------------------------------------------------
class UncertaintyConfig(BaseModel):
    pos_jitter: float = Field(default=10.0, ge=0.0)
    alt_range: Tuple[float, float] = (5.0, 10.0)
    speed_range: Tuple[float, float] = (18.0, 18.0)
    heading_jitter: float = Field(default=0.0, ge=0.0)
    log_noise_pos: float = Field(default=3.0, ge=0.0)
    log_noise_alt: float = Field(default=1.0, ge=0.0)
    resample_window_c: float = Field(default=2.0, ge=0.0)
    seed: int = Field(default_factory=lambda: settings.AIRLANE_SEED)

    @field_validator("alt_range", "speed_range")
    @classmethod
    def validate_range(cls, v: Tuple[float, float]) -> Tuple[float, float]:
        if v[1] < v[0]:
            raise ValueError("Range upper bound is below its lower bound")
        return v

    @model_validator(mode="after")
    def check_non_negative(self) -> "UncertaintyConfig":
        if self.alt_range[0] < 0 or self.speed_range[0] < 0:
            raise ValueError("Altitude and speed ranges must be non negative")
        return self

    # --------------------------------------------------
    @property
    def is_deterministic(self) -> bool:
        return (
            self.pos_jitter == 0
            and self.alt_range[0] == self.alt_range[1]
            and self.speed_range[0] == self.speed_range[1]
            and self.heading_jitter == 0
        )
