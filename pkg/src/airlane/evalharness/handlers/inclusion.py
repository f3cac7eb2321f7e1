__all__ = ["inclusion_mask", "count_inclusion"]

from typing import Tuple

import numpy as np

from ...ovmodel.schemas import Contract
from ...sim.schemas import TrajectorySet


# --------------------------------------------------
def inclusion_mask(contract: Contract, traj: TrajectorySet) -> np.ndarray:
    """(n, T + 1) mask of the logged points some valid OV contains.

    Same rule as ``contract_contains``: an OV answers for t in
    [t0, t0 + t_d] with the entry of floor(t - t0), boxes closed.
    """
    x, y, z = traj.x, traj.y, traj.alt
    mask = np.zeros(x.shape, dtype=bool)
    for ov in contract.ovs:
        ks = np.flatnonzero((traj.t >= ov.t0 - 1e-9) & (traj.t <= ov.t_end + 1e-9))
        if ks.size == 0:
            continue
        idx = np.clip(
            np.floor(traj.t[ks] - ov.t0 + 1e-9).astype(int), 0, len(ov.entries) - 1
        )
        bounds = np.array([ov.entries[i].region.as_list() for i in idx])
        lo, hi = bounds[:, :3], bounds[:, 3:]
        inside = (
            (x[:, ks] >= lo[:, 0])
            & (x[:, ks] <= hi[:, 0])
            & (y[:, ks] >= lo[:, 1])
            & (y[:, ks] <= hi[:, 1])
            & (z[:, ks] >= lo[:, 2])
            & (z[:, ks] <= hi[:, 2])
        )
        mask[:, ks] |= inside
    return mask


# --------------------------------------------------
def count_inclusion(
    contract: Contract, traj: TrajectorySet, span_only: bool = True
) -> Tuple[int, int]:
    """(total, included) over the logged points; with ``span_only`` only
    samples inside the contract's time span count."""
    mask = inclusion_mask(contract, traj)
    if span_only and contract.ovs:
        t0, t1 = contract.span
        keep = (traj.t >= t0 - 1e-9) & (traj.t <= t1 + 1e-9)
        mask = mask[:, keep]
    return int(mask.size), int(mask.sum())
