__all__ = ["verify_tube", "points_in_tube"]

import numpy as np

from ...utils import AlignmentError, ConfigError
from ..schemas import ReachTube, VerificationReport


# --------------------------------------------------
def points_in_tube(tube: ReachTube, points: np.ndarray) -> np.ndarray:
    """Inclusion mask for (m, duration + 1, 3) local points sampled at
    tube.t0, tube.t0 + 1, ...; sample k is tested against the box of the
    interval containing it."""
    points = np.asarray(points, dtype=float)
    if points.ndim != 3 or points.shape[1] != tube.duration + 1:
        raise AlignmentError(
            f"Holdout has {points.shape[1] if points.ndim == 3 else '?'} samples, "
            f"tube expects {tube.duration + 1}"
        )
    lo, hi = tube.bounds_arrays()
    k = np.minimum(np.arange(tube.duration + 1), tube.duration - 1)
    return ((points >= lo[k]) & (points <= hi[k])).all(axis=-1)


# --------------------------------------------------
def verify_tube(
    tube: ReachTube, holdout: np.ndarray, threshold: float = 0.95
) -> VerificationReport:
    holdout = np.asarray(holdout, dtype=float)
    if holdout.size == 0:
        raise ConfigError("Verification needs at least one holdout trajectory")
    inside = points_in_tube(tube, holdout)
    total = int(inside.size)
    included = int(inside.sum())
    ratio = included / total
    return VerificationReport(
        total_points=total,
        included_points=included,
        inclusion_ratio=ratio,
        threshold=threshold,
        passed=ratio >= threshold,
    )
