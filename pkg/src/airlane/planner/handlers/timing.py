__all__ = ["estimate_timed_route"]

from typing import List

import numpy as np

from ...utils import ConfigError
from ..schemas import Route, TimedWaypoint


# --------------------------------------------------
def estimate_timed_route(route: Route) -> List[TimedWaypoint]:
    """Earliest arrival flies at the upper speed bound, latest at the lower."""
    lo, hi = route.speed_bounds
    if lo <= 0 or hi <= 0:
        raise ConfigError(f"Speed bounds must be positive, got {route.speed_bounds}")
    pts = np.asarray(route.xy(), dtype=float)
    along = np.concatenate([[0.0], np.cumsum(np.hypot(*np.diff(pts, axis=0).T))])
    return [
        TimedWaypoint(
            waypoint=wp,
            distance=float(d),
            earliest_arrival=route.departure_time + float(d) / hi,
            latest_arrival=route.departure_time + float(d) / lo,
        )
        for wp, d in zip(route.waypoints, along)
    ]
