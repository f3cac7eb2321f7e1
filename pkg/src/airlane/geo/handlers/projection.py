__all__ = [
    "meters_per_degree",
    "make_projection",
    "to_local",
    "to_geo",
    "to_local_arrays",
    "to_geo_arrays",
]

import math
from typing import Tuple

import numpy as np

from ...utils import DomainError, OutOfRangeError
from ..schemas import GeoPoint, LocalPoint, Projection


# --------------------------------------------------
def meters_per_degree(lat: float) -> Tuple[float, float]:
    """Length of one degree of latitude and of longitude at ``lat``.

    Truncated series for the WGS84 ellipsoid:

        m_lat = 111132.92 - 559.82 cos 2p + 1.175 cos 4p + 0.0023 cos 6p
        m_lon = 111412.84 cos p - 93.5 cos 3p + 0.118 cos 5p
    """
    if not math.isfinite(lat) or lat < -90.0 or lat > 90.0:
        raise DomainError(f"Latitude {lat} outside [-90, 90]")
    phi = math.radians(lat)
    m_lat = (
        111132.92
        - 559.82 * math.cos(2 * phi)
        + 1.175 * math.cos(4 * phi)
        + 0.0023 * math.cos(6 * phi)
    )
    m_lon = (
        111412.84 * math.cos(phi)
        - 93.5 * math.cos(3 * phi)
        + 0.118 * math.cos(5 * phi)
    )
    return m_lat, m_lon


# --------------------------------------------------
def make_projection(origin: GeoPoint, window_deg: float = 1.0) -> Projection:
    m_lat, m_lon = meters_per_degree(origin.lat)
    if m_lon <= 0:
        raise DomainError(f"No local projection at latitude {origin.lat}")
    return Projection(
        origin=origin, m_per_deg_lat=m_lat, m_per_deg_lon=m_lon, window_deg=window_deg
    )


# --------------------------------------------------
def to_local(proj: Projection, p: GeoPoint) -> LocalPoint:
    if (
        abs(p.lat - proj.origin.lat) > proj.window_deg
        or abs(p.lon - proj.origin.lon) > proj.window_deg
    ):
        raise OutOfRangeError(
            f"Point ({p.lat}, {p.lon}) outside the {proj.window_deg} degree window"
            f" around ({proj.origin.lat}, {proj.origin.lon})"
        )
    return LocalPoint(
        x=(p.lon - proj.origin.lon) * proj.m_per_deg_lon,
        y=(p.lat - proj.origin.lat) * proj.m_per_deg_lat,
        z=p.alt,
    )


# --------------------------------------------------
def to_geo(proj: Projection, p: LocalPoint) -> GeoPoint:
    return GeoPoint(
        lat=proj.origin.lat + p.y / proj.m_per_deg_lat,
        lon=proj.origin.lon + p.x / proj.m_per_deg_lon,
        alt=p.z,
    )


# --------------------------------------------------
def to_local_arrays(
    proj: Projection, lat: np.ndarray, lon: np.ndarray
) -> Tuple[np.ndarray, np.ndarray]:
    """Vectorized ``to_local`` for the horizontal axes, without window checks."""
    x = (np.asarray(lon, dtype=float) - proj.origin.lon) * proj.m_per_deg_lon
    y = (np.asarray(lat, dtype=float) - proj.origin.lat) * proj.m_per_deg_lat
    return x, y


# --------------------------------------------------
def to_geo_arrays(
    proj: Projection, x: np.ndarray, y: np.ndarray
) -> Tuple[np.ndarray, np.ndarray]:
    lat = proj.origin.lat + np.asarray(y, dtype=float) / proj.m_per_deg_lat
    lon = proj.origin.lon + np.asarray(x, dtype=float) / proj.m_per_deg_lon
    return lat, lon
