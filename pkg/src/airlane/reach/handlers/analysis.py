__all__ = ["BatchAnalysis", "analyze_batch"]

from dataclasses import dataclass

import numpy as np

from ...config import logger
from ...geo.handlers import normalization_box_from_points, normalize
from ...geo.schemas import NormalizationBox
from ...sim.schemas import TrajectorySet, UncertaintyConfig
from ..schemas import DiscrepancyModel, ReachTube, VerificationReport
from .discrepancy import deviation_floor, learn_discrepancy, select_training_subset
from .tube import compute_reach_tube
from .verification import verify_tube


# --------------------------------------------------
@dataclass
class BatchAnalysis:
    tube: ReachTube
    model: DiscrepancyModel
    report: VerificationReport
    norm_box: NormalizationBox
    training: np.ndarray
    holdout: np.ndarray


# --------------------------------------------------
def analyze_batch(
    traj: TrajectorySet,
    cfg: UncertaintyConfig,
    training_size: int = 16,
    threshold: float = 0.95,
) -> BatchAnalysis:
    """Learns the discrepancy on a training subset, builds the tube around
    the centre and verifies it on the remaining trajectories."""
    geo = traj.geo
    norm_box = normalization_box_from_points(geo)
    normalized = normalize(norm_box, geo)
    training = select_training_subset(traj, training_size)
    excluded = {traj.center_index, *training.tolist()}
    holdout = np.array([i for i in range(traj.n) if i not in excluded], dtype=int)
    center = normalized[traj.center_index]
    initial_radius = np.abs(normalized[training, 0, :] - center[0]).max(axis=0)
    model = learn_discrepancy(
        center,
        normalized[training],
        initial_radius,
        floor=deviation_floor(norm_box, traj.projection, cfg),
    )
    tube = compute_reach_tube(center, model, norm_box, traj.projection, traj.t0)
    holdout_points = traj.local[holdout]
    report = verify_tube(tube, holdout_points, threshold)
    logger.debug(
        f"Tube at t0={traj.t0}: {report.included_points}/{report.total_points} "
        f"holdout points inside ({report.inclusion_ratio:.2%})"
    )
    return BatchAnalysis(
        tube=tube,
        model=model,
        report=report,
        norm_box=norm_box,
        training=training,
        holdout=holdout,
    )
