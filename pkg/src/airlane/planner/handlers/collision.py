__all__ = ["ArrivalTiming", "CollisionChecker", "clip_segment_to_box"]

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Tuple

import numpy as np
import shapely

from ..schemas import Environment, Route

Point2 = Tuple[float, float]


# --------------------------------------------------
def clip_segment_to_box(
    a: Point2, b: Point2, box: Tuple[float, float, float, float]
) -> Tuple[float, float] | None:
    """Liang-Barsky clip of segment a->b against (xmin, ymin, xmax, ymax).

    Returns the parameter interval (u0, u1) of the part inside the closed
    box, or None when the segment misses it.
    """
    (ax, ay), (bx, by) = a, b
    xmin, ymin, xmax, ymax = box
    dx, dy = bx - ax, by - ay
    u0, u1 = 0.0, 1.0
    for p, q in ((-dx, ax - xmin), (dx, xmax - ax), (-dy, ay - ymin), (dy, ymax - ay)):
        if p == 0:
            if q < 0:
                return None
            continue
        r = q / p
        if p < 0:
            u0 = max(u0, r)
        else:
            u1 = min(u1, r)
        if u0 > u1:
            return None
    return (u0, u1)


# --------------------------------------------------
@dataclass(frozen=True)
class ArrivalTiming:
    """Departure and admissible ground speeds of the route being planned.

    A point reached after ``s`` meters of path is over it somewhere in
    ``[departure + s / max_speed, departure + s / min_speed]``.
    """

    departure: float = 0.0
    min_speed: float = 18.0
    max_speed: float = 18.0

    # --------------------------------------------------
    @classmethod
    def from_route_fields(cls, **route_fields) -> "ArrivalTiming":
        default = Route.model_fields["speed_bounds"].default
        lo, hi = route_fields.get("speed_bounds") or default
        cruise = route_fields.get("cruise_speed")
        if cruise is not None:
            lo = hi = cruise
        return cls(
            departure=float(route_fields.get("departure_time", 0.0)),
            min_speed=float(lo),
            max_speed=float(hi),
        )

    # --------------------------------------------------
    @classmethod
    def from_route(cls, route: Route) -> "ArrivalTiming":
        return cls(
            departure=route.departure_time,
            min_speed=route.speed_bounds[0],
            max_speed=route.speed_bounds[1],
        )

    # --------------------------------------------------
    def window(self, cost: np.ndarray, length: np.ndarray) -> np.ndarray:
        """(n, 2) arrival intervals of segments starting ``cost`` meters in."""
        cost, length = np.broadcast_arrays(
            np.asarray(cost, dtype=float), np.asarray(length, dtype=float)
        )
        early = self.departure + cost / self.max_speed
        late = self.departure + (cost + length) / max(self.min_speed, 1e-9)
        return np.stack([early.ravel(), late.ravel()], axis=1)


# --------------------------------------------------
class CollisionChecker:
    """Exact obstacle queries for the horizontal plane.

    Every no-fly zone blocks the plane regardless of its altitude band:
    planning is horizontal, so the check stays conservative. Dynamic
    obstacles of the environment block a segment only while active; the
    segment's arrival window comes from ``timing`` and the path length
    already flown to its start. Segment queries without that length, or a
    checker without timing, treat every dynamic obstacle as always active.
    """

    # --------------------------------------------------
    def __init__(
        self,
        env: Environment,
        extra: Iterable[shapely.Geometry] = (),
        timing: Optional[ArrivalTiming] = None,
    ):
        self.bounds = env.bounds
        self.timing = timing
        shapes = [nfz.shape() for nfz in env.nfzs] + list(extra)
        self.obstacles = shapely.union_all(shapes) if shapes else None
        if self.obstacles is not None:
            shapely.prepare(self.obstacles)
        boxes = np.array(
            [ob.footprint.as_list() for ob in env.dynamic_obstacles], dtype=float
        ).reshape(-1, 6)
        self.dynamic = shapely.box(boxes[:, 0], boxes[:, 1], boxes[:, 3], boxes[:, 4])
        self.active = np.array(
            [ob.active for ob in env.dynamic_obstacles], dtype=float
        ).reshape(-1, 2)
        if self.dynamic.size:
            shapely.prepare(self.dynamic)

    # --------------------------------------------------
    @property
    def has_dynamic(self) -> bool:
        return bool(self.dynamic.size)

    # --------------------------------------------------
    def in_bounds(self, x: float, y: float) -> bool:
        xmin, ymin, xmax, ymax = self.bounds
        return xmin <= x <= xmax and ymin <= y <= ymax

    # --------------------------------------------------
    def point_free(self, x: float, y: float) -> bool:
        """Static check only; segments through the point see dynamic ones."""
        if not self.in_bounds(x, y):
            return False
        if self.obstacles is None:
            return True
        return not self.obstacles.intersects(shapely.Point(x, y))

    # --------------------------------------------------
    def _dynamic_blocked(
        self, lines: np.ndarray, cost: Optional[np.ndarray]
    ) -> np.ndarray:
        hit = shapely.intersects(self.dynamic[:, None], lines[None, :])
        if cost is None or self.timing is None:
            return hit.any(axis=0)
        window = self.timing.window(cost, shapely.length(lines))
        overlap = (self.active[:, None, 0] <= window[None, :, 1]) & (
            self.active[:, None, 1] >= window[None, :, 0]
        )
        return (hit & overlap).any(axis=0)

    # --------------------------------------------------
    def segment_free(
        self, a: Point2, b: Point2, cost: Optional[float] = None
    ) -> bool:
        """``cost`` is the path length flown before reaching ``a``."""
        return bool(self.segments_free(a, [b], cost=cost)[0])

    # --------------------------------------------------
    def segments_free(
        self,
        a: Point2,
        targets: Sequence[Point2],
        cost: Optional[float | np.ndarray] = None,
    ) -> np.ndarray:
        """Vectorized ``segment_free`` from one start to many ends.

        ``cost`` is the path length flown before the segment starts, a
        scalar or one value per target, whichever end the route starts at.
        """
        targets = np.asarray(targets, dtype=float).reshape(-1, 2)
        xmin, ymin, xmax, ymax = self.bounds
        ok = (
            (targets[:, 0] >= xmin)
            & (targets[:, 0] <= xmax)
            & (targets[:, 1] >= ymin)
            & (targets[:, 1] <= ymax)
        )
        if not self.in_bounds(*a):
            return np.zeros(len(targets), dtype=bool)
        if (self.obstacles is None and not self.has_dynamic) or not ok.any():
            return ok
        start = np.broadcast_to(np.asarray(a, dtype=float), targets.shape)
        same = (targets == start).all(axis=1)
        # Degenerate segments become points so shapely keeps them valid.
        lines = np.where(
            same,
            shapely.points(targets),
            shapely.linestrings(np.stack([start, targets], axis=1)),
        )
        if self.obstacles is not None:
            ok &= ~shapely.intersects(self.obstacles, lines)
        if self.has_dynamic:
            if cost is not None:
                cost = np.broadcast_to(np.asarray(cost, dtype=float), ok.shape)
            ok &= ~self._dynamic_blocked(lines, cost)
        return ok

    # --------------------------------------------------
    def path_free(self, points: Sequence[Point2]) -> bool:
        pts = np.asarray(points, dtype=float).reshape(-1, 2)
        flown = np.concatenate([[0.0], np.cumsum(np.hypot(*np.diff(pts, axis=0).T))])
        return all(
            self.segment_free(tuple(a), tuple(b), cost=c)
            for a, b, c in zip(pts[:-1], pts[1:], flown[:-1])
        )
