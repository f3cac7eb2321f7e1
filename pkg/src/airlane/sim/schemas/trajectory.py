__all__ = ["TrajectorySet", "TRAJECTORY_FIELDS"]

from dataclasses import dataclass, field
from typing import List

import numpy as np

from ...geo.handlers import to_local_arrays
from ...geo.schemas import GeoPoint, Projection
from ...utils import ConfigError
from .state import State

TRAJECTORY_FIELDS = ("lat", "lon", "alt", "heading", "vs", "tas")


# --------------------------------------------------
@dataclass(frozen=True)
class TrajectorySet:
    """N logged trajectories sampled every second over one horizon.

    Arrays are (N, duration + 1); row ``center_index`` is the nominal run.
    """

    t: np.ndarray
    lat: np.ndarray
    lon: np.ndarray
    alt: np.ndarray
    heading: np.ndarray
    vs: np.ndarray
    tas: np.ndarray
    leg: np.ndarray
    finished: np.ndarray
    projection: Projection
    t0: float
    duration: int
    center_index: int = 0
    x: np.ndarray = field(init=False, repr=False)
    y: np.ndarray = field(init=False, repr=False)

    # -------------------------------------------------
    def __post_init__(self):
        n, k = self.lat.shape
        if n < 2:
            raise ConfigError("A trajectory set needs at least two trajectories")
        if k != self.duration + 1 or self.t.shape != (k,):
            raise ConfigError("Trajectory length must be duration + 1 samples")
        for name in ("lon", "alt", "heading", "vs", "tas", "leg", "finished"):
            if getattr(self, name).shape != (n, k):
                raise ConfigError(f"Field {name} is not aligned with lat")
        x, y = to_local_arrays(self.projection, self.lat, self.lon)
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    # -------------------------------------------------
    @property
    def n(self) -> int:
        return self.lat.shape[0]

    # -------------------------------------------------
    @property
    def geo(self) -> np.ndarray:
        """(N, T + 1, 3) array of (lat, lon, alt)."""
        return np.stack([self.lat, self.lon, self.alt], axis=-1)

    # -------------------------------------------------
    @property
    def local(self) -> np.ndarray:
        """(N, T + 1, 3) array of (x, y, z) meters."""
        return np.stack([self.x, self.y, self.alt], axis=-1)

    # -------------------------------------------------
    def finished_fraction(self, k: int = -1) -> float:
        return float(self.finished[:, k].mean())

    # -------------------------------------------------
    def state(self, i: int, k: int) -> State:
        return State(
            t=float(self.t[k]),
            pos=GeoPoint(
                lat=float(self.lat[i, k]),
                lon=float(self.lon[i, k]),
                alt=max(float(self.alt[i, k]), 0.0),
            ),
            heading=float(self.heading[i, k]),
            vs=float(self.vs[i, k]),
            tas=max(float(self.tas[i, k]), 0.0),
            leg=int(self.leg[i, k]),
        )

    # -------------------------------------------------
    def trajectory(self, i: int) -> List[State]:
        return [self.state(i, k) for k in range(self.duration + 1)]

    # -------------------------------------------------
    def subset(self, rows: np.ndarray, center_index: int = 0) -> "TrajectorySet":
        rows = np.asarray(rows, dtype=int)
        return TrajectorySet(
            t=self.t,
            lat=self.lat[rows],
            lon=self.lon[rows],
            alt=self.alt[rows],
            heading=self.heading[rows],
            vs=self.vs[rows],
            tas=self.tas[rows],
            leg=self.leg[rows],
            finished=self.finished[rows],
            projection=self.projection,
            t0=self.t0,
            duration=self.duration,
            center_index=center_index,
        )
