__all__ = ["trajectory_set_to_dataframe", "export_trajectory_csv"]

from pathlib import Path

import numpy as np
import pandas as pd

from ...utils import write_csv
from ..schemas import TrajectorySet


# --------------------------------------------------
def trajectory_set_to_dataframe(traj: TrajectorySet) -> pd.DataFrame:
    n, k = traj.lat.shape
    return pd.DataFrame(
        {
            "traj_id": np.repeat(np.arange(n), k),
            "t": np.tile(traj.t, n),
            "lat": traj.lat.ravel(),
            "lon": traj.lon.ravel(),
            "alt": traj.alt.ravel(),
            "heading": traj.heading.ravel(),
            "vs": traj.vs.ravel(),
            "tas": traj.tas.ravel(),
        }
    )


# --------------------------------------------------
def export_trajectory_csv(traj: TrajectorySet, path: str | Path) -> Path:
    return write_csv(path, trajectory_set_to_dataframe(traj), float_format="%.9g")
