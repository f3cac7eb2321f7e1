__all__ = ["advance", "step", "bearing_deg"]

import numpy as np

from ...geo.handlers import make_projection, to_geo, to_local
from ...geo.schemas import GeoPoint, LocalPoint
from ...utils import ConfigError
from ..schemas import AircraftModel, State


# --------------------------------------------------
def bearing_deg(dx: np.ndarray, dy: np.ndarray) -> np.ndarray:
    """Bearing clockwise from north, in [0, 360)."""
    return np.mod(np.degrees(np.arctan2(dx, dy)), 360.0)


# --------------------------------------------------
def advance(
    x: np.ndarray,
    y: np.ndarray,
    z: np.ndarray,
    heading: np.ndarray,
    tas: np.ndarray,
    tx: np.ndarray,
    ty: np.ndarray,
    tz: np.ndarray,
    speed_cmd: np.ndarray,
    model: AircraftModel,
    dt: float,
    steer: np.ndarray | None = None,
):
    """One saturating integration step for a batch of aircraft in the local plane.

    Aircraft with ``steer`` False hold heading and altitude. Returns the new
    (x, y, z, heading, tas, vs).
    """
    diff = np.mod(bearing_deg(tx - x, ty - y) - heading + 180.0, 360.0) - 180.0
    if steer is not None:
        diff = np.where(steer, diff, 0.0)
        tz = np.where(steer, tz, z)
    max_turn = model.max_turn_rate * dt
    new_heading = np.mod(heading + np.clip(diff, -max_turn, max_turn), 360.0)

    cmd = np.clip(speed_cmd, model.tas_min, model.tas_max)
    max_dv = model.max_accel * dt
    new_tas = np.maximum(tas + np.clip(cmd - tas, -max_dv, max_dv), 0.0)

    dz = np.clip(tz - z, -model.max_descent * dt, model.max_climb * dt)
    new_z = z + dz

    rad = np.radians(new_heading)
    new_x = x + new_tas * dt * np.sin(rad)
    new_y = y + new_tas * dt * np.cos(rad)
    return new_x, new_y, new_z, new_heading, new_tas, dz / dt


# --------------------------------------------------
def step(
    state: State,
    target: GeoPoint,
    model: AircraftModel,
    dt: float,
    speed_cmd: float | None = None,
) -> State:
    """Advances one aircraft by ``dt`` towards ``target``."""
    if dt <= 0:
        raise ConfigError(f"Integration step must be positive, got {dt}")
    proj = make_projection(state.pos)
    tgt = to_local(proj, target)
    cmd = model.cruise_tas if speed_cmd is None else speed_cmd
    x, y, z, hdg, tas, vs = advance(
        np.zeros(1),
        np.zeros(1),
        np.array([state.pos.alt]),
        np.array([state.heading]),
        np.array([state.tas]),
        np.array([tgt.x]),
        np.array([tgt.y]),
        np.array([tgt.z]),
        np.array([cmd]),
        model,
        dt,
    )
    start = LocalPoint(x=float(x[0]), y=float(y[0]), z=max(float(z[0]), 0.0))
    pos = to_geo(proj, start)
    return State(
        t=state.t + dt,
        pos=pos,
        heading=float(hdg[0]),
        vs=float(vs[0]),
        tas=float(tas[0]),
        leg=state.leg,
    )
