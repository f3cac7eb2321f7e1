__all__ = [
    "horizon_start",
    "first_affected_horizon",
    "nfz_violations",
    "violation_margin",
]

import math
from typing import Dict, List

import numpy as np

from ...ovmodel.handlers import contract_intersects_nfz
from ...ovmodel.schemas import Contract, NoFlyZone
from ...planner.schemas import Route
from ..schemas import PipelineConfig


# --------------------------------------------------
def horizon_start(route: Route, cfg: PipelineConfig, index: int) -> float:
    return route.departure_time + index * cfg.horizon_stride


# --------------------------------------------------
def first_affected_horizon(old: Route, new: Route, cfg: PipelineConfig) -> float:
    """Index of the first horizon whose batch may have reached the point
    where ``new`` leaves ``old`` (inf when the routes are identical).

    Arrival at the divergence point is taken at the fastest admissible speed;
    one horizon of slack covers aircraft running ahead of the bounds.
    """
    common = 0
    for a, b in zip(old.waypoints, new.waypoints):
        if (a.x, a.y, a.z) != (b.x, b.y, b.z):
            break
        common += 1
    if common == len(old.waypoints) == len(new.waypoints):
        return math.inf
    pts = np.asarray(new.xy()[: max(common, 1)], dtype=float)
    reached = float(np.hypot(*np.diff(pts, axis=0).T).sum()) if len(pts) > 1 else 0.0
    arrival = new.departure_time + reached / new.speed_bounds[1]
    covered = (arrival - new.departure_time - cfg.t_d) / cfg.horizon_stride
    return max(0, math.ceil(covered) - 1)


# --------------------------------------------------
def nfz_violations(contract: Contract, nfzs: List[NoFlyZone]) -> Dict[str, List[int]]:
    """NFZ id -> indices of the OVs intersecting it (clean NFZs omitted)."""
    found = {}
    for nfz in nfzs:
        hits = contract_intersects_nfz(contract, nfz)
        if hits:
            found[nfz.id] = hits
    return found


# --------------------------------------------------
def violation_margin(
    contract: Contract, nfz: NoFlyZone, ov_indices: List[int]
) -> float:
    """Largest horizontal half-extent among the entries of the violating OVs
    whose box touches ``nfz``."""
    shape = nfz.shape()
    margin = 0.0
    for i in ov_indices:
        for entry in contract.ovs[i].entries:
            box = entry.region
            if nfz.overlaps_altitude(box.zmin, box.zmax) and shape.intersects(
                box.footprint()
            ):
                dx, dy, _ = box.extent
                margin = max(margin, dx / 2.0, dy / 2.0)
    return margin
