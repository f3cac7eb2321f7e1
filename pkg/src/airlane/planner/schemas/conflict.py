__all__ = ["Conflict"]

from typing import List, Tuple

from pydantic import BaseModel

from ...geo.schemas import LocalPoint
from ...ovmodel.schemas import NoFlyZone


# --------------------------------------------------
class Conflict(BaseModel):
    """A route segment crossing a hot cell of a foreign OV entry.

    ``obstacle`` is the foreign OV footprint as static no-fly zones, ready
    to be added to the environment by a repair.
    """

    segment_index: int
    contract_index: int
    route_id: str
    ov_index: int
    entry_index: int
    point: LocalPoint
    t: float
    probability: float
    arrival_window: Tuple[float, float]
    obstacle: List[NoFlyZone] = []
