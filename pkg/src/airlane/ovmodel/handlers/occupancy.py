__all__ = ["build_grid", "DEFAULT_CELL_SIZE"]

import math

import numpy as np

from ...geo.schemas import LocalPoint
from ..schemas import Box3D, OccupancyGrid

DEFAULT_CELL_SIZE = 10.0


# --------------------------------------------------
def build_grid(
    x: np.ndarray, y: np.ndarray, region: Box3D, cell_size: float = DEFAULT_CELL_SIZE
) -> OccupancyGrid:
    """Counts aircraft per square cell over the union of ``region`` and the
    sample positions, so no sample falls off the grid."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    xmin = min(region.xmin, float(x.min()))
    ymin = min(region.ymin, float(y.min()))
    xmax = max(region.xmax, float(x.max()))
    ymax = max(region.ymax, float(y.max()))
    nx = math.floor((xmax - xmin) / cell_size) + 1
    ny = math.floor((ymax - ymin) / cell_size) + 1
    cols = np.clip(np.floor((x - xmin) / cell_size).astype(int), 0, nx - 1)
    rows = np.clip(np.floor((y - ymin) / cell_size).astype(int), 0, ny - 1)
    counts = np.zeros((ny, nx), dtype=np.int64)
    np.add.at(counts, (rows, cols), 1)
    return OccupancyGrid(
        cell_size=cell_size,
        origin=LocalPoint(x=xmin, y=ymin, z=0.0),
        counts=counts,
        n_total=int(x.size),
    )
