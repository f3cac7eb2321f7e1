__all__ = [
    "find_conflicts",
    "entry_validity",
    "ov_obstacle",
    "dynamic_obstacles_from_contracts",
    "DEFAULT_CONFLICT_THRESHOLD",
]

from typing import Dict, List, Sequence, Tuple

import numpy as np
import shapely

from ...geo.schemas import LocalPoint
from ...ovmodel.handlers import ov_footprint
from ...ovmodel.schemas import Box3D, Contract, NoFlyZone, OperationalVolume
from ..schemas import Conflict, DynamicObstacle, TimedWaypoint
from .collision import clip_segment_to_box

DEFAULT_CONFLICT_THRESHOLD = 0.05


# --------------------------------------------------
def entry_validity(ov: OperationalVolume, n: int) -> Tuple[float, float, bool]:
    """(start, end, end_inclusive) of the time span entry ``n`` answers for."""
    t = ov.entries[n].t
    if n == len(ov.entries) - 1:
        return (t, t, True)
    return (t, t + 1.0, False)


# --------------------------------------------------
def _overlaps(lo: float, hi: float, start: float, end: float, inclusive: bool) -> bool:
    if inclusive:
        return lo <= end and hi >= start
    return lo < end and hi >= start


# --------------------------------------------------
def _hot_cells(entry, threshold: float) -> List[Tuple[int, int, float]]:
    grid = entry.dist
    if grid.n_total == 0:
        return []
    frac = grid.counts / grid.n_total
    rows, cols = np.nonzero(frac > threshold)
    return [(int(r), int(c), float(frac[r, c])) for r, c in zip(rows, cols)]


# --------------------------------------------------
def _intersect(a, b):
    return (max(a[0], b[0]), max(a[1], b[1]), min(a[2], b[2]), min(a[3], b[3]))


# --------------------------------------------------
def find_conflicts(
    timed_route: Sequence[TimedWaypoint],
    foreign_contracts: Sequence[Contract],
    threshold: float = DEFAULT_CONFLICT_THRESHOLD,
) -> List[Conflict]:
    """Route segments that cross a foreign OV cell whose occupancy exceeds
    ``threshold`` while the segment can be flown through it.

    A segment can be anywhere in its arrival window for any speed in the
    bounds, so any overlap of that window with the entry's validity counts.
    At most one conflict is reported per (segment, contract, OV): the
    earliest entry.
    """
    conflicts: List[Conflict] = []
    for s, (wa, wb) in enumerate(zip(timed_route, timed_route[1:])):
        a = (wa.waypoint.x, wa.waypoint.y)
        b = (wb.waypoint.x, wb.waypoint.y)
        seg_lo, seg_hi = wa.earliest_arrival, wb.latest_arrival
        seg_box = (min(a[0], b[0]), min(a[1], b[1]), max(a[0], b[0]), max(a[1], b[1]))
        for c, contract in enumerate(foreign_contracts):
            for ov in contract.ovs:
                if seg_hi < ov.t0 or seg_lo > ov.t_end:
                    continue
                hit = _first_hit(s, a, b, wa, wb, seg_box, ov, threshold)
                if hit is None:
                    continue
                n, point, t, p, window = hit
                conflicts.append(
                    Conflict(
                        segment_index=s,
                        contract_index=c,
                        route_id=contract.route_id,
                        ov_index=ov.index,
                        entry_index=n,
                        point=point,
                        t=t,
                        probability=p,
                        arrival_window=window,
                        obstacle=ov_obstacle(
                            ov, f"{contract.route_id}-ov{ov.index}"
                        ),
                    )
                )
    return conflicts


# --------------------------------------------------
def _first_hit(s, a, b, wa, wb, seg_box, ov, threshold):
    for n, entry in enumerate(ov.entries):
        box = entry.region
        fp = (box.xmin, box.ymin, box.xmax, box.ymax)
        if (
            seg_box[2] < fp[0]
            or seg_box[0] > fp[2]
            or seg_box[3] < fp[1]
            or seg_box[1] > fp[3]
        ):
            continue
        start, end, inclusive = entry_validity(ov, n)
        clip = clip_segment_to_box(a, b, fp)
        if clip is None:
            continue
        if not _overlaps(
            _earliest(wa, wb, clip[0]), _latest(wa, wb, clip[1]), start, end, inclusive
        ):
            continue
        for row, col, p in _hot_cells(entry, threshold):
            cell = _intersect(fp, entry.dist.cell_bounds(row, col))
            if cell[0] > cell[2] or cell[1] > cell[3]:
                continue
            sub = clip_segment_to_box(a, b, cell)
            if sub is None:
                continue
            lo, hi = _earliest(wa, wb, sub[0]), _latest(wa, wb, sub[1])
            if not _overlaps(lo, hi, start, end, inclusive):
                continue
            u = sub[0]
            point = LocalPoint(
                x=a[0] + u * (b[0] - a[0]),
                y=a[1] + u * (b[1] - a[1]),
                z=max(0.0, wa.waypoint.z + u * (wb.waypoint.z - wa.waypoint.z)),
            )
            return n, point, max(lo, start), p, (lo, hi)
    return None


# --------------------------------------------------
def _earliest(wa: TimedWaypoint, wb: TimedWaypoint, u: float) -> float:
    return wa.earliest_arrival + u * (wb.earliest_arrival - wa.earliest_arrival)


# --------------------------------------------------
def _latest(wa: TimedWaypoint, wb: TimedWaypoint, u: float) -> float:
    return wa.latest_arrival + u * (wb.latest_arrival - wa.latest_arrival)


# --------------------------------------------------
def ov_obstacle(ov: OperationalVolume, name: str) -> List[NoFlyZone]:
    """The OV footprint as static no-fly zones (one per polygon part)."""
    footprint = ov_footprint(ov)
    parts = getattr(footprint, "geoms", [footprint])
    zmin = min(e.region.zmin for e in ov.entries)
    zmax = max(e.region.zmax for e in ov.entries)
    zones = []
    for k, part in enumerate(parts):
        ring = shapely.Polygon(part.exterior).simplify(0.0)
        coords = list(ring.exterior.coords)[:-1]
        zones.append(
            NoFlyZone(
                id=f"{name}-{k}" if len(parts) > 1 else name,
                polygon=[LocalPoint(x=x, y=y) for x, y in coords],
                alt_range=(max(zmin, 0.0), max(zmax, 0.0)),
            )
        )
    return zones


# --------------------------------------------------
def dynamic_obstacles_from_contracts(
    contracts: Sequence[Contract],
) -> List[DynamicObstacle]:
    obstacles = []
    for contract in contracts:
        for ov in contract.ovs:
            box: Box3D = ov.entries[0].region
            for entry in ov.entries[1:]:
                box = box.union(entry.region)
            obstacles.append(
                DynamicObstacle(
                    footprint=box,
                    active=(ov.t0, ov.t_end),
                    source=f"{contract.route_id}/ov-{ov.index}",
                )
            )
    return obstacles
