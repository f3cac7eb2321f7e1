__all__ = [
    "learn_discrepancy",
    "max_deviation",
    "deviation_floor",
    "select_training_subset",
    "MIN_TRAINING",
    "SEGMENT_SECONDS",
]

import math

import numpy as np

from ...geo.handlers import meters_to_normalized
from ...geo.schemas import NormalizationBox, Projection
from ...sim.schemas import TrajectorySet, UncertaintyConfig
from ...utils import InsufficientDataError
from ..schemas import AxisDiscrepancy, DiscrepancyModel, DiscrepancySegment

MIN_TRAINING = 5
SEGMENT_SECONDS = 10.0


# --------------------------------------------------
def max_deviation(center: np.ndarray, training: np.ndarray) -> np.ndarray:
    """Per-timestep, per-axis max |training_j(t) - center(t)|; shape (T + 1, 3)."""
    return np.abs(np.asarray(training) - np.asarray(center)[None, :, :]).max(axis=0)


# --------------------------------------------------
def deviation_floor(
    box: NormalizationBox, proj: Projection, cfg: UncertaintyConfig
) -> np.ndarray:
    """Smallest modeled deviation per axis: max(1 m, log noise sigma), normalized."""
    horizontal = meters_to_normalized(box, proj, max(1.0, cfg.log_noise_pos))
    vertical = meters_to_normalized(box, proj, max(1.0, cfg.log_noise_alt))
    return np.array([horizontal[0], horizontal[1], vertical[2]])


# --------------------------------------------------
def _hat_basis(times: np.ndarray, knots: np.ndarray) -> np.ndarray:
    basis = np.zeros((times.size, knots.size))
    for j in range(knots.size):
        if j > 0:
            left = (times >= knots[j - 1]) & (times <= knots[j])
            basis[left, j] = (times[left] - knots[j - 1]) / (knots[j] - knots[j - 1])
        if j < knots.size - 1:
            right = (times >= knots[j]) & (times <= knots[j + 1])
            basis[right, j] = (knots[j + 1] - times[right]) / (knots[j + 1] - knots[j])
    return basis


# --------------------------------------------------
def _fit_axis(times: np.ndarray, y: np.ndarray, knots: np.ndarray) -> np.ndarray:
    """Continuous piecewise linear upper envelope of ``y`` with knots at
    ``knots``: least squares first, then each knot raised left to right
    just enough for its segment to dominate the data."""
    basis = _hat_basis(times, knots)
    fitted, *_ = np.linalg.lstsq(basis, y, rcond=None)
    upper = np.empty_like(fitted)
    upper[0] = max(fitted[0], y[times <= knots[0] + 1e-9].max())
    for s in range(knots.size - 1):
        span = knots[s + 1] - knots[s]
        inside = (times > knots[s] + 1e-9) & (times <= knots[s + 1] + 1e-9)
        w = (times[inside] - knots[s]) / span
        required = upper[s] + (y[inside] - upper[s]) / w
        upper[s + 1] = max(fitted[s + 1], required.max() if required.size else -np.inf)
    return upper


# --------------------------------------------------
def learn_discrepancy(
    center: np.ndarray,
    training: np.ndarray,
    initial_radius: np.ndarray,
    floor: np.ndarray | float = 1e-9,
) -> DiscrepancyModel:
    """Learns a per-axis piecewise exponential bound on the deviation of the
    training trajectories from the centre.

    Args:
        center: (T + 1, 3) normalized centre trajectory, 1 s spacing.
        training: (m, T + 1, 3) normalized training trajectories.
        initial_radius: per-axis initial spread r0; zero entries fall back
            to the floor.
        floor: per-axis smallest deviation, keeps the logarithm finite.

    Returns:
        DiscrepancyModel whose bound dominates every training deviation.
    """
    training = np.asarray(training, dtype=float)
    center = np.asarray(center, dtype=float)
    if training.ndim != 3 or training.shape[0] < MIN_TRAINING:
        raise InsufficientDataError(
            f"Need at least {MIN_TRAINING} training trajectories, "
            f"got {0 if training.ndim != 3 else training.shape[0]}"
        )
    floor = np.broadcast_to(np.asarray(floor, dtype=float), (3,))
    r0 = np.asarray(initial_radius, dtype=float)
    r0 = np.where(r0 > 0, r0, floor)

    duration = center.shape[0] - 1
    times = np.arange(duration + 1, dtype=float)
    n_segments = max(1, math.ceil(duration / SEGMENT_SECONDS))
    knots = np.linspace(0.0, float(duration), n_segments + 1)
    deviation = max_deviation(center, training)

    axes = []
    for a in range(3):
        y = np.log(np.maximum(deviation[:, a], floor[a]))
        # 1e-9 in log space absorbs exp/log rounding on the dominance check
        upper = np.maximum(_fit_axis(times, y, knots) + 1e-9, math.log(r0[a]))
        segments = [
            DiscrepancySegment(
                start=float(knots[s]),
                K=max(1.0, math.exp(upper[s] - math.log(r0[a]))),
                gamma=float((upper[s + 1] - upper[s]) / (knots[s + 1] - knots[s])),
            )
            for s in range(n_segments)
        ]
        axes.append(AxisDiscrepancy(r0=float(r0[a]), segments=segments))
    return DiscrepancyModel(axes=axes, duration=float(duration))


# --------------------------------------------------
def select_training_subset(traj: TrajectorySet, size: int = 16) -> np.ndarray:
    """Greedy farthest-point choice of ``size`` trajectories (centre excluded)
    on initial position and dead-reckoned position at the horizon end."""
    candidates = np.array([i for i in range(traj.n) if i != traj.center_index])
    if candidates.size <= size:
        return candidates
    rad = np.radians(traj.heading[:, 0])
    reach = traj.tas[:, 0] * traj.duration
    features = np.column_stack(
        [
            traj.x[:, 0],
            traj.y[:, 0],
            traj.alt[:, 0],
            traj.x[:, 0] + reach * np.sin(rad),
            traj.y[:, 0] + reach * np.cos(rad),
        ]
    )
    center = features[traj.center_index]
    pool = features[candidates]
    nearest = np.linalg.norm(pool - center, axis=1)
    chosen = []
    for _ in range(size):
        pick = int(np.argmax(nearest))
        chosen.append(pick)
        nearest = np.minimum(nearest, np.linalg.norm(pool - pool[pick], axis=1))
        nearest[chosen] = -np.inf
    return np.sort(candidates[chosen])
