__all__ = ["compute_reach_tube"]

import numpy as np

from ...geo.handlers import denormalize
from ...geo.schemas import NormalizationBox, Projection
from ...ovmodel.schemas import Box3D
from ...utils import ConfigError
from ..schemas import DiscrepancyModel, ReachTube


# --------------------------------------------------
def compute_reach_tube(
    center: np.ndarray,
    model: DiscrepancyModel,
    norm_box: NormalizationBox,
    projection: Projection,
    t0: float = 0.0,
) -> ReachTube:
    """Inflates the normalized centre trajectory into one box per second.

    Box i covers centre points i and i + 1, grown on each axis by the larger
    of the bounds at both interval ends, then mapped back to local meters.
    """
    center = np.asarray(center, dtype=float)
    duration = center.shape[0] - 1
    if duration < 1:
        raise ConfigError("A reach tube needs at least two centre samples")
    if model.duration < duration:
        raise ConfigError("Discrepancy horizon is shorter than the trajectory")
    bound = model.bound(np.arange(duration + 1, dtype=float))
    inflation = np.maximum(bound[:-1], bound[1:])
    lo = np.minimum(center[:-1], center[1:]) - inflation
    hi = np.maximum(center[:-1], center[1:]) + inflation

    # Per-axis increasing affine maps keep lo below hi.
    geo_lo = denormalize(norm_box, lo)
    geo_hi = denormalize(norm_box, hi)
    origin = projection.origin
    segments = []
    for (lat0, lon0, alt0), (lat1, lon1, alt1) in zip(geo_lo, geo_hi):
        segments.append(
            Box3D(
                xmin=(lon0 - origin.lon) * projection.m_per_deg_lon,
                ymin=(lat0 - origin.lat) * projection.m_per_deg_lat,
                zmin=alt0,
                xmax=(lon1 - origin.lon) * projection.m_per_deg_lon,
                ymax=(lat1 - origin.lat) * projection.m_per_deg_lat,
                zmax=alt1,
            )
        )
    return ReachTube(segments=segments, t0=t0, duration=duration)
