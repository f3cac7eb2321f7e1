__all__ = ["run_batch", "LOG_INTERVAL", "INTEGRATION_STEP", "PASS_ABEAM_FACTOR"]

from typing import Sequence

import numpy as np

from ...config import logger
from ...geo.handlers import to_geo_arrays, to_local_arrays
from ...planner.schemas import Route
from ...utils import ConfigError, make_rng
from ..schemas import AircraftModel, State, TrajectorySet, UncertaintyConfig
from .autopilot import advance
from .initialization import nominal_state_from_states

INTEGRATION_STEP = 0.1
LOG_INTERVAL = 1.0
# A waypoint also counts as reached once the aircraft is abeam of it within
# this many capture radii (fly-by turn).
PASS_ABEAM_FACTOR = 4.0


# --------------------------------------------------
def _waypoint_arrays(route: Route):
    wx = np.array([p.x for p in route.waypoints])
    wy = np.array([p.y for p in route.waypoints])
    wz = np.array([p.z for p in route.waypoints])
    if route.waypoint_speeds is None:
        ws = np.full(wx.size, np.nan)
    else:
        ws = np.array([np.nan if v is None else v for v in route.waypoint_speeds])
    return wx, wy, wz, ws


# --------------------------------------------------
def run_batch(
    states: Sequence[State],
    route: Route,
    model: AircraftModel,
    cfg: UncertaintyConfig,
    duration: int,
    nominal: State | None = None,
    batch_key: int = 0,
    dt: float = INTEGRATION_STEP,
) -> TrajectorySet:
    """Simulates every aircraft along ``route`` for ``duration`` seconds.

    The nominal state is prepended as trajectory 0 (the centre). Integration
    runs at ``dt``; a noisy state is logged every second. Each aircraft draws
    its log noise from its own stream keyed on (seed, batch_key, index).
    """
    if not route.waypoints:
        raise ConfigError("Cannot simulate an empty route")
    if duration <= 0 or int(duration) != duration:
        raise ConfigError(
            f"Duration must be a positive whole number of seconds, got {duration}"
        )
    if not states:
        raise ConfigError("Cannot simulate an empty batch")
    substeps = int(round(LOG_INTERVAL / dt))
    if substeps < 1 or abs(substeps * dt - LOG_INTERVAL) > 1e-9:
        raise ConfigError(f"Integration step {dt} must divide the 1 s log interval")
    duration = int(duration)

    if nominal is None:
        nominal = nominal_state_from_states(states)
    batch = [nominal, *states]
    n = len(batch)
    t0 = nominal.t
    proj = route.projection
    wx, wy, wz, ws = _waypoint_arrays(route)
    n_wp = wx.size

    x, y = to_local_arrays(
        proj, np.array([s.pos.lat for s in batch]), np.array([s.pos.lon for s in batch])
    )
    z = np.array([s.pos.alt for s in batch])
    heading = np.array([s.heading for s in batch])
    tas = np.array([s.tas for s in batch])
    vs = np.array([s.vs for s in batch])
    leg = np.clip(np.array([s.leg for s in batch]), 1, n_wp)
    if model.speed_mode == "hold":
        selected = tas.copy()
    else:
        selected = np.full(n, model.cruise_tas)
    capture = model.waypoint_capture_radius

    logs = {
        name: np.empty((n, duration + 1))
        for name in ("x", "y", "z", "heading", "vs", "tas")
    }
    leg_log = np.empty((n, duration + 1), dtype=int)

    def record(k: int):
        logs["x"][:, k] = x
        logs["y"][:, k] = y
        logs["z"][:, k] = z
        logs["heading"][:, k] = heading
        logs["vs"][:, k] = vs
        logs["tas"][:, k] = tas
        leg_log[:, k] = leg

    record(0)
    for k in range(1, duration + 1):
        for _ in range(substeps):
            active = leg < n_wp
            target = np.minimum(leg, n_wp - 1)
            leg_speed = ws[target]
            speed_cmd = np.where(active & np.isfinite(leg_speed), leg_speed, selected)
            x, y, z, heading, tas, vs = advance(
                x,
                y,
                z,
                heading,
                tas,
                wx[target],
                wy[target],
                wz[target],
                speed_cmd,
                model,
                dt,
                steer=active,
            )
            dist = np.hypot(wx[target] - x, wy[target] - y)
            ux = wx[target] - wx[target - 1]
            uy = wy[target] - wy[target - 1]
            along = (x - wx[target]) * ux + (y - wy[target]) * uy
            reached = active & (
                (dist < capture) | ((along >= 0) & (dist < PASS_ABEAM_FACTOR * capture))
            )
            leg = leg + reached
        record(k)

    lat = np.empty((n, duration + 1))
    lon = np.empty((n, duration + 1))
    alt = np.empty((n, duration + 1))
    for i in range(n):
        rng = make_rng(cfg.seed, "log-noise", batch_key, i)
        noise = rng.standard_normal((duration + 1, 3))
        nx = logs["x"][i] + cfg.log_noise_pos * noise[:, 0]
        ny = logs["y"][i] + cfg.log_noise_pos * noise[:, 1]
        lat[i], lon[i] = to_geo_arrays(proj, nx, ny)
        alt[i] = np.maximum(logs["z"][i] + cfg.log_noise_alt * noise[:, 2], 0.0)

    finished = leg_log >= n_wp
    logger.debug(
        f"Batch {batch_key}: {n} aircraft, t0={t0}, {duration} s, "
        f"{finished[:, -1].mean():.0%} finished"
    )
    return TrajectorySet(
        t=t0 + np.arange(duration + 1, dtype=float),
        lat=lat,
        lon=lon,
        alt=alt,
        heading=logs["heading"],
        vs=logs["vs"],
        tas=logs["tas"],
        leg=leg_log,
        finished=finished,
        projection=proj,
        t0=t0,
        duration=duration,
        center_index=0,
    )
