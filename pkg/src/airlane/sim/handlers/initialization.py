__all__ = [
    "init_states_uniform",
    "init_states_from_batch",
    "nominal_state_uniform",
    "nominal_state_from_batch",
    "nominal_state_from_states",
    "assign_legs",
    "MAX_CONSECUTIVE_REJECTIONS",
]

import math
from typing import Dict, List, Sequence, Tuple

import numpy as np
from scipy import stats

from ...config import logger
from ...geo.handlers import meters_per_degree, to_geo_arrays
from ...geo.schemas import GeoPoint
from ...ovmodel.schemas import Box3D
from ...planner.schemas import Route
from ...utils import ConfigError, InfeasibleResampleError, make_rng
from ..schemas import State, TrajectorySet, UncertaintyConfig

MAX_CONSECUTIVE_REJECTIONS = 1000


# --------------------------------------------------
def init_states_uniform(
    route_origin: GeoPoint,
    initial_leg_heading: float,
    cfg: UncertaintyConfig,
    n: int,
    t: float = 0.0,
    batch_key: int = 0,
) -> List[State]:
    """Draws ``n`` independent initial states around the route origin.

    Position is uniform in a horizontal disc of radius ``pos_jitter``;
    altitude, speed and heading offsets are uniform in their ranges.
    """
    if n < 2:
        raise ConfigError(f"Need at least 2 aircraft, got {n}")
    rng = make_rng(cfg.seed, "init-uniform", batch_key)
    radius = cfg.pos_jitter * np.sqrt(rng.uniform(0.0, 1.0, n))
    theta = rng.uniform(0.0, 2.0 * math.pi, n)
    alt = rng.uniform(cfg.alt_range[0], cfg.alt_range[1], n)
    tas = rng.uniform(cfg.speed_range[0], cfg.speed_range[1], n)
    heading = initial_leg_heading + rng.uniform(
        -cfg.heading_jitter, cfg.heading_jitter, n
    )
    m_lat, m_lon = meters_per_degree(route_origin.lat)
    lat = route_origin.lat + radius * np.cos(theta) / m_lat
    lon = route_origin.lon + radius * np.sin(theta) / m_lon
    return [
        State(
            t=t,
            pos=GeoPoint(lat=float(lat[i]), lon=float(lon[i]), alt=float(alt[i])),
            heading=float(heading[i]),
            tas=float(tas[i]),
            vs=0.0,
            leg=1,
        )
        for i in range(n)
    ]


# --------------------------------------------------
def nominal_state_uniform(
    route_origin: GeoPoint,
    initial_leg_heading: float,
    cfg: UncertaintyConfig,
    t: float = 0.0,
) -> State:
    """The unjittered state at the centre of the uniform initial distribution."""
    return State(
        t=t,
        pos=route_origin.model_copy(update={"alt": sum(cfg.alt_range) / 2.0}),
        heading=initial_leg_heading,
        tas=sum(cfg.speed_range) / 2.0,
        vs=0.0,
        leg=1,
    )


# --------------------------------------------------
def nominal_state_from_states(states: Sequence[State]) -> State:
    """Per-field mean of a group of states (circular mean for heading)."""
    if not states:
        raise ConfigError("Cannot build a nominal state from an empty batch")
    lat = np.array([s.pos.lat for s in states])
    lon = np.array([s.pos.lon for s in states])
    alt = np.array([s.pos.alt for s in states])
    heading = np.array([s.heading for s in states])
    legs = np.array([s.leg for s in states])
    return State(
        t=states[0].t,
        pos=GeoPoint(
            lat=float(lat.mean()), lon=float(lon.mean()), alt=float(alt.mean())
        ),
        heading=float(stats.circmean(heading, high=360.0, low=0.0)),
        vs=float(np.mean([s.vs for s in states])),
        tas=float(np.mean([s.tas for s in states])),
        leg=int(np.bincount(legs).argmax()),
    )


# --------------------------------------------------
def _window_mask(prev: TrajectorySet, delta: float, c: float) -> np.ndarray:
    if delta < 0 or delta + c > prev.duration:
        raise ConfigError(
            f"Resample window {delta} +/- {c} s does not fit in a "
            f"{prev.duration} s batch"
        )
    rel = prev.t - prev.t0
    return (rel >= delta - c - 1e-9) & (rel <= delta + c + 1e-9)


# --------------------------------------------------
def _fit_window(
    prev: TrajectorySet, mask: np.ndarray
) -> Dict[str, Tuple[float, float]]:
    """Normal fit (mean, std) of every state field over the window, in the
    local frame for position."""
    fits = {}
    for name, values in (
        ("x", prev.x),
        ("y", prev.y),
        ("alt", prev.alt),
        ("vs", prev.vs),
        ("tas", prev.tas),
    ):
        samples = values[:, mask].ravel()
        fits[name] = (float(samples.mean()), float(samples.std()))
    heading = prev.heading[:, mask].ravel()
    h_mean = float(stats.circmean(heading, high=360.0, low=0.0))
    h_std = float(np.nan_to_num(stats.circstd(heading, high=360.0, low=0.0)))
    fits["heading"] = (h_mean, h_std)
    return fits


# --------------------------------------------------
def _point_segment_distance(
    px: np.ndarray, py: np.ndarray, a: Tuple[float, float], b: Tuple[float, float]
) -> np.ndarray:
    ax, ay = a
    bx, by = b
    vx, vy = bx - ax, by - ay
    length2 = vx * vx + vy * vy
    u = np.clip(((px - ax) * vx + (py - ay) * vy) / length2, 0.0, 1.0)
    return np.hypot(px - (ax + u * vx), py - (ay + u * vy))


# --------------------------------------------------
def assign_legs(
    x: np.ndarray, y: np.ndarray, route: Route, observed_legs: np.ndarray
) -> np.ndarray:
    """Active waypoint for resampled positions: the nearest route segment among
    those the previous batch was flying in the window. Points beyond the last
    waypoint keep the finished marker when the previous batch had finished
    aircraft."""
    n_wp = len(route.waypoints)
    xy = route.xy()
    lo = int(max(1, observed_legs.min()))
    hi = int(min(n_wp - 1, observed_legs.max()))
    hi = max(hi, lo)
    candidates = np.arange(lo, hi + 1)
    dists = np.stack(
        [_point_segment_distance(x, y, xy[leg - 1], xy[leg]) for leg in candidates]
    )
    legs = candidates[np.argmin(dists, axis=0)]
    if observed_legs.max() >= n_wp:
        (ax, ay), (bx, by) = xy[-2], xy[-1]
        along = (x - bx) * (bx - ax) + (y - by) * (by - ay)
        legs = np.where((legs == n_wp - 1) & (along >= 0), n_wp, legs)
    return legs


# --------------------------------------------------
def _legs_for(
    x: np.ndarray,
    y: np.ndarray,
    prev: TrajectorySet,
    mask: np.ndarray,
    route: Route | None,
) -> np.ndarray:
    observed = prev.leg[:, mask].ravel().astype(int)
    if route is None:
        return np.full(np.shape(x), int(np.bincount(observed).argmax()))
    return assign_legs(x, y, route, observed)


# --------------------------------------------------
def nominal_state_from_batch(
    prev: TrajectorySet,
    delta: float,
    cfg: UncertaintyConfig,
    route: Route | None = None,
) -> State:
    """Mean of the per-field normals fitted over the resample window."""
    mask = _window_mask(prev, delta, cfg.resample_window_c)
    fits = _fit_window(prev, mask)
    x = np.array([fits["x"][0]])
    y = np.array([fits["y"][0]])
    lat, lon = to_geo_arrays(prev.projection, x, y)
    leg = _legs_for(x, y, prev, mask, route)
    return State(
        t=prev.t0 + delta,
        pos=GeoPoint(
            lat=float(lat[0]), lon=float(lon[0]), alt=max(fits["alt"][0], 0.0)
        ),
        heading=fits["heading"][0],
        vs=fits["vs"][0],
        tas=max(fits["tas"][0], 0.0),
        leg=int(leg[0]),
    )


# --------------------------------------------------
def init_states_from_batch(
    prev: TrajectorySet,
    delta: float,
    cfg: UncertaintyConfig,
    n: int,
    region: Box3D | None = None,
    margin: float = math.inf,
    route: Route | None = None,
    batch_key: int = 0,
) -> List[State]:
    """Draws ``n`` states from per-field normals fitted to ``prev`` over
    ``[delta - c, delta + c]``.

    Positions are redrawn until they fall within ``margin`` meters of
    ``region`` (horizontally); a slot that keeps failing raises
    InfeasibleResampleError.
    """
    if n < 2:
        raise ConfigError(f"Need at least 2 aircraft, got {n}")
    mask = _window_mask(prev, delta, cfg.resample_window_c)
    fits = _fit_window(prev, mask)
    rng = make_rng(cfg.seed, "init-resample", batch_key)

    x = np.empty(n)
    y = np.empty(n)
    pending = np.ones(n, dtype=bool)
    rejections = np.zeros(n, dtype=int)
    while pending.any():
        idx = np.flatnonzero(pending)
        cx = rng.normal(fits["x"][0], fits["x"][1], idx.size)
        cy = rng.normal(fits["y"][0], fits["y"][1], idx.size)
        if region is None or math.isinf(margin):
            ok = np.ones(idx.size, dtype=bool)
        else:
            ok = np.array(
                [region.distance_2d(a, b) <= margin for a, b in zip(cx, cy)],
                dtype=bool,
            )
        x[idx[ok]] = cx[ok]
        y[idx[ok]] = cy[ok]
        pending[idx[ok]] = False
        rejections[idx[~ok]] += 1
        if (rejections >= MAX_CONSECUTIVE_REJECTIONS).any():
            logger.warning(
                f"Resampling rejected {MAX_CONSECUTIVE_REJECTIONS} consecutive draws"
            )
            raise InfeasibleResampleError(
                f"{MAX_CONSECUTIVE_REJECTIONS} consecutive draws fell outside the "
                "previous OV region; the batch is diverging"
            )

    alt = np.maximum(rng.normal(*fits["alt"], n), 0.0)
    vs = rng.normal(*fits["vs"], n)
    tas = np.maximum(rng.normal(*fits["tas"], n), 0.0)
    heading = np.mod(rng.normal(*fits["heading"], n), 360.0)
    legs = _legs_for(x, y, prev, mask, route)
    lat, lon = to_geo_arrays(prev.projection, x, y)
    t = prev.t0 + delta
    return [
        State(
            t=t,
            pos=GeoPoint(lat=float(lat[i]), lon=float(lon[i]), alt=float(alt[i])),
            heading=float(heading[i]),
            vs=float(vs[i]),
            tas=float(tas[i]),
            leg=int(legs[i]),
        )
        for i in range(n)
    ]
