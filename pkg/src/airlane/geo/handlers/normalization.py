__all__ = [
    "normalization_box_from_points",
    "normalize",
    "denormalize",
    "meters_to_normalized",
]

import numpy as np

from ...utils import OutOfRangeError
from ..schemas import NormalizationBox, Projection


# --------------------------------------------------
def normalization_box_from_points(points: np.ndarray) -> NormalizationBox:
    pts = np.asarray(points, dtype=float).reshape(-1, 3)
    return NormalizationBox(
        mins=tuple(float(v) for v in pts.min(axis=0)),
        maxs=tuple(float(v) for v in pts.max(axis=0)),
    )


# --------------------------------------------------
def normalize(
    box: NormalizationBox, points: np.ndarray, tol: float = 1e-9
) -> np.ndarray:
    """Maps (lat, lon, alt) rows into the unit cube defined by ``box``."""
    pts = np.asarray(points, dtype=float)
    mins = np.asarray(box.mins)
    maxs = np.asarray(box.maxs)
    spans = np.asarray(box.spans)
    slack = tol * np.maximum(spans, 1.0)
    if np.any(pts < mins - slack) or np.any(pts > maxs + slack):
        raise OutOfRangeError("Point outside the normalization box")
    out = (pts - mins) / spans
    degenerate = np.asarray(box.degenerate)
    if degenerate.any():
        out[..., degenerate] = out[..., degenerate] + 0.5
    return out


# --------------------------------------------------
def denormalize(box: NormalizationBox, values: np.ndarray) -> np.ndarray:
    """Inverse of ``normalize``; accepts values outside [0, 1]."""
    vals = np.array(values, dtype=float, copy=True)
    degenerate = np.asarray(box.degenerate)
    if degenerate.any():
        vals[..., degenerate] = vals[..., degenerate] - 0.5
    return np.asarray(box.mins) + vals * np.asarray(box.spans)


# --------------------------------------------------
def meters_to_normalized(
    box: NormalizationBox, proj: Projection, meters: float
) -> np.ndarray:
    """Per-axis size of ``meters`` in normalized units."""
    per_axis_deg = np.array(
        [meters / proj.m_per_deg_lat, meters / proj.m_per_deg_lon, meters]
    )
    return per_axis_deg / np.asarray(box.spans)
