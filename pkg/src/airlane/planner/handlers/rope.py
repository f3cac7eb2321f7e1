__all__ = ["rope_optimize", "densify", "DEFAULT_ROPE_RESOLUTION", "MAX_OPT_FACTOR"]

from typing import List, Optional, Tuple

import numpy as np

from ...geo.schemas import LocalPoint
from ..schemas import Environment, Route
from .candidate import route_length
from .collision import ArrivalTiming, CollisionChecker

DEFAULT_ROPE_RESOLUTION = 10.0
MAX_OPT_FACTOR = 10_000


# --------------------------------------------------
def densify(points: List[Tuple[float, float]], resolution: float) -> np.ndarray:
    """Inserts intermediate points so no edge is longer than ``resolution``."""
    pts = np.asarray(points, dtype=float)
    out = [pts[0]]
    for a, b in zip(pts[:-1], pts[1:]):
        n = max(1, int(np.ceil(np.hypot(*(b - a)) / resolution)))
        for k in range(1, n + 1):
            out.append(a + (b - a) * (k / n))
    return np.asarray(out)


# --------------------------------------------------
def _drop_collinear(pts: np.ndarray, tol: float = 1e-6) -> np.ndarray:
    keep = [0]
    for i in range(1, len(pts) - 1):
        a, b, c = pts[keep[-1]], pts[i], pts[i + 1]
        cross = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
        if abs(cross) > tol * max(1.0, np.hypot(*(c - a))):
            keep.append(i)
    keep.append(len(pts) - 1)
    return pts[keep]


# --------------------------------------------------
def rope_optimize(
    route: Route,
    env: Environment,
    opt_factor: int = MAX_OPT_FACTOR,
    resolution: float = DEFAULT_ROPE_RESOLUTION,
    checker: Optional[CollisionChecker] = None,
) -> Route:
    """Pulls the route taut.

    The route is densified, then from each kept point the farthest point
    within ``opt_factor`` positions ahead that is directly reachable becomes
    the next kept point. Intermediate corners therefore slide along the
    original edges instead of staying at tree nodes.
    """
    checker = checker or CollisionChecker(env, timing=ArrivalTiming.from_route(route))
    pts = densify(route.xy(), resolution)
    last = len(pts) - 1
    kept = [0]
    i, flown = 0, 0.0
    while i < last:
        hi = min(last, i + max(1, int(opt_factor)))
        ahead = np.arange(i + 1, hi + 1)
        free = checker.segments_free(tuple(pts[i]), pts[ahead], cost=flown)
        if free.any():
            j = int(ahead[np.flatnonzero(free)[-1]])
        else:
            # Densified sub-edges of a valid route are free; stay on it.
            j = i + 1
        kept.append(j)
        flown += float(np.hypot(*(pts[j] - pts[i])))
        i = j
    taut = _drop_collinear(pts[kept])
    if route_length(taut) > route_length(route):
        return route
    z_start, z_end = route.waypoints[0].z, route.waypoints[-1].z
    along = np.concatenate([[0.0], np.cumsum(np.hypot(*np.diff(taut, axis=0).T))])
    frac = along / along[-1] if along[-1] > 0 else np.zeros_like(along)
    waypoints = [
        LocalPoint(x=float(x), y=float(y), z=float(z_start + f * (z_end - z_start)))
        for (x, y), f in zip(taut, frac)
    ]
    return route.model_copy(
        update={
            "waypoints": waypoints,
            "waypoint_speeds": None,
        }
    )
