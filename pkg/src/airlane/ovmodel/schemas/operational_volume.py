__all__ = ["OVEntry", "OperationalVolume", "Contract", "ContractViolation"]

import math
from typing import List

from pydantic import BaseModel, Field, model_validator

from .geometry import Box3D
from .occupancy import OccupancyGrid


# --------------------------------------------------
class OVEntry(BaseModel):
    region: Box3D
    t: float
    dist: OccupancyGrid


# --------------------------------------------------
class OperationalVolume(BaseModel):
    entries: List[OVEntry]
    t0: float
    t_d: float = Field(gt=0.0)
    delta: float = Field(ge=0.0)
    index: int = 0

    @model_validator(mode="after")
    def check_timeline(self) -> "OperationalVolume":
        if self.delta >= self.t_d:
            raise ValueError("Offset must be lower than the OV duration")
        if not self.entries:
            return self
        times = [e.t for e in self.entries]
        if not math.isclose(times[0], self.t0, abs_tol=1e-9):
            raise ValueError("First entry time must equal t0")
        for a, b in zip(times, times[1:]):
            if not math.isclose(b - a, 1.0, abs_tol=1e-9):
                raise ValueError("Entry times must be spaced 1 s apart")
        if not math.isclose(times[-1] - times[0], self.t_d, abs_tol=1e-9):
            raise ValueError("Entries must span exactly t_d seconds")
        return self

    # --------------------------------------------------
    @property
    def t_end(self) -> float:
        return self.t0 + self.t_d

    # --------------------------------------------------
    @property
    def n_aircraft(self) -> int:
        return self.entries[0].dist.n_total if self.entries else 0

    # --------------------------------------------------
    def is_active(self, t: float) -> bool:
        return self.t0 <= t <= self.t_end

    # --------------------------------------------------
    def entry_index(self, t: float) -> int:
        """Index of the entry for the interval containing ``t`` (floor)."""
        k = math.floor(t - self.t0 + 1e-9)
        return max(0, min(k, len(self.entries) - 1))


# --------------------------------------------------
class Contract(BaseModel):
    """Ordered chain of OVs for one route. Invariants are checked by
    ``validate_contract`` rather than at construction."""

    ovs: List[OperationalVolume] = []
    route_id: str = "route"
    aircraft_id: str = "aircraft"

    # --------------------------------------------------
    @property
    def t_d(self) -> float | None:
        return self.ovs[0].t_d if self.ovs else None

    # --------------------------------------------------
    @property
    def delta(self) -> float | None:
        return self.ovs[0].delta if self.ovs else None

    # --------------------------------------------------
    @property
    def span(self) -> tuple[float, float] | None:
        if not self.ovs:
            return None
        return (self.ovs[0].t0, max(ov.t_end for ov in self.ovs))


# --------------------------------------------------
class ContractViolation(BaseModel):
    rule: str
    msg: str
    ov_index: int | None = None
