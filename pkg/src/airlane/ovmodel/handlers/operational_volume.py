__all__ = [
    "build_ov",
    "ov_total_volume",
    "ov_footprint",
    "probability",
    "ov_contains",
    "ov_intersects_nfz",
]

import shapely

from ...geo.schemas import LocalPoint
from ...reach.schemas import ReachTube
from ...sim.schemas import TrajectorySet
from ...utils import AlignmentError, ConfigError, TemporalRangeError
from ..schemas import NoFlyZone, OperationalVolume, OVEntry
from .occupancy import DEFAULT_CELL_SIZE, build_grid


# --------------------------------------------------
def build_ov(
    tube: ReachTube,
    traj: TrajectorySet,
    delta: float,
    cell_size: float = DEFAULT_CELL_SIZE,
    index: int = 0,
) -> OperationalVolume:
    """One entry per logged second: the tube box of the interval starting at
    that second (the last entry reuses the final box) and the occupancy grid
    of every simulated aircraft at that second."""
    if tube.t0 != traj.t0 or tube.duration != traj.duration:
        raise AlignmentError(
            f"Tube covers [{tube.t0}, +{tube.duration}] s but the batch covers "
            f"[{traj.t0}, +{traj.duration}] s"
        )
    if not (0 <= delta < tube.duration):
        raise ConfigError(f"Offset {delta} outside [0, {tube.duration})")
    entries = []
    for k in range(traj.duration + 1):
        region = tube.segments[min(k, tube.duration - 1)]
        entries.append(
            OVEntry(
                region=region,
                t=float(traj.t[k]),
                dist=build_grid(traj.x[:, k], traj.y[:, k], region, cell_size),
            )
        )
    return OperationalVolume(
        entries=entries, t0=traj.t0, t_d=float(tube.duration), delta=delta, index=index
    )


# --------------------------------------------------
def ov_footprint(ov: OperationalVolume) -> shapely.Geometry:
    return shapely.union_all([e.region.footprint() for e in ov.entries])


# --------------------------------------------------
def ov_total_volume(ov: OperationalVolume) -> float:
    """Area of the union of the entries' horizontal footprints, km^2."""
    if not ov.entries:
        return 0.0
    return ov_footprint(ov).area / 1e6


# --------------------------------------------------
def probability(ov: OperationalVolume, s: LocalPoint, t: float) -> float:
    if not ov.entries or not ov.is_active(t):
        raise TemporalRangeError(
            f"t={t} outside the OV lifetime [{ov.t0}, {ov.t_end}]"
        )
    return ov.entries[ov.entry_index(t)].dist.fraction_at(s.x, s.y)


# --------------------------------------------------
def ov_contains(ov: OperationalVolume, p: LocalPoint, t: float) -> bool:
    if not ov.entries or not ov.is_active(t):
        return False
    return ov.entries[ov.entry_index(t)].region.contains(p.x, p.y, p.z)


# --------------------------------------------------
def ov_intersects_nfz(ov: OperationalVolume, nfz: NoFlyZone) -> bool:
    polygon = nfz.shape()
    shapely.prepare(polygon)
    for entry in ov.entries:
        box = entry.region
        if not nfz.overlaps_altitude(box.zmin, box.zmax):
            continue
        if polygon.intersects(box.footprint()):
            return True
    return False
