__all__ = ["AircraftModel", "AIRCRAFT_PRESETS"]

from typing import Literal

from pydantic import BaseModel, Field, model_validator


# --------------------------------------------------
class AircraftModel(BaseModel):
    """Parametric point-mass performance envelope."""

    name: str = "octocopter"
    cruise_tas: float = Field(default=18.0, gt=0.0)
    tas_min: float = Field(default=4.0, ge=0.0)
    tas_max: float = Field(default=28.0, gt=0.0)
    max_accel: float = Field(default=2.0, gt=0.0)
    max_turn_rate: float = Field(default=30.0, gt=0.0)
    max_climb: float = Field(default=4.0, gt=0.0)
    max_descent: float = Field(default=3.0, gt=0.0)
    waypoint_capture_radius: float = Field(default=40.0, gt=0.0)
    speed_mode: Literal["hold", "cruise"] = "hold"

    @model_validator(mode="after")
    def check_speeds(self) -> "AircraftModel":
        if not (self.tas_min <= self.cruise_tas <= self.tas_max):
            raise ValueError("Expected tas_min <= cruise_tas <= tas_max")
        return self

    # --------------------------------------------------
    @classmethod
    def preset(cls, name: str, **overrides) -> "AircraftModel":
        try:
            values = dict(AIRCRAFT_PRESETS[name])
        except KeyError:
            raise ValueError(
                f"Unknown aircraft preset {name!r}, expected one of "
                f"{sorted(AIRCRAFT_PRESETS)}"
            )
        values.update(overrides)
        return cls(**values)


AIRCRAFT_PRESETS = {
    # Small electric multirotor, urban delivery class.
    "octocopter": dict(
        name="octocopter",
        cruise_tas=18.0,
        tas_min=4.0,
        tas_max=28.0,
        max_accel=2.0,
        max_turn_rate=30.0,
        max_climb=4.0,
        max_descent=3.0,
        waypoint_capture_radius=40.0,
    ),
    # Tilt-wing passenger eVTOL in wing-borne cruise.
    "evtol": dict(
        name="evtol",
        cruise_tas=50.0,
        tas_min=25.0,
        tas_max=70.0,
        max_accel=2.5,
        max_turn_rate=10.0,
        max_climb=6.0,
        max_descent=5.0,
        waypoint_capture_radius=300.0,
    ),
}
