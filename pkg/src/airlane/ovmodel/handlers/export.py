__all__ = [
    "contract_to_dict",
    "contract_from_dict",
    "write_contract",
    "contract_footprints_geojson",
    "box_ring",
    "contract_origin",
    "GEOJSON_PRECISION",
]

from pathlib import Path
from typing import List, Tuple

import geojson

from ...geo.handlers import to_geo_arrays
from ...geo.schemas import GeoPoint, LocalPoint, Projection
from ...utils import round_significant, write_json
from ..schemas import Box3D, Contract, OccupancyGrid, OperationalVolume, OVEntry

# geojson rounds to 6 decimals by default, about 0.1 m in latitude
GEOJSON_PRECISION = 9


# --------------------------------------------------
def _num(v: float) -> float:
    return round_significant(v, 12)


# --------------------------------------------------
def contract_to_dict(contract: Contract, projection: Projection | None = None) -> dict:
    payload = {
        "route_id": contract.route_id,
        "aircraft_id": contract.aircraft_id,
        "t_d": contract.t_d,
        "delta": contract.delta,
        "ovs": [
            {
                "t0": _num(ov.t0),
                "t_d": ov.t_d,
                "delta": ov.delta,
                "entries": [
                    {
                        "t": _num(e.t),
                        "box": [_num(v) for v in e.region.as_list()],
                        "grid": {
                            "origin": [_num(e.dist.origin.x), _num(e.dist.origin.y)],
                            "cell_size": e.dist.cell_size,
                            "n_total": e.dist.n_total,
                            "counts": e.dist.counts.tolist(),
                        },
                    }
                    for e in ov.entries
                ],
            }
            for ov in contract.ovs
        ],
    }
    if projection is not None:
        payload["origin"] = projection.origin.model_dump()
    return payload


# --------------------------------------------------
def contract_from_dict(payload: dict) -> Contract:
    t_d = payload.get("t_d")
    delta = payload.get("delta")
    ovs = []
    for index, raw in enumerate(payload.get("ovs", [])):
        entries = [
            OVEntry(
                region=Box3D.from_list(e["box"]),
                t=e["t"],
                dist=OccupancyGrid(
                    cell_size=e["grid"]["cell_size"],
                    origin=LocalPoint(
                        x=e["grid"]["origin"][0], y=e["grid"]["origin"][1]
                    ),
                    counts=e["grid"]["counts"],
                    n_total=e["grid"].get(
                        "n_total", sum(map(sum, e["grid"]["counts"]))
                    ),
                ),
            )
            for e in raw["entries"]
        ]
        ov_td = raw.get("t_d", t_d)
        if ov_td is None:
            ov_td = entries[-1].t - entries[0].t
        ovs.append(
            OperationalVolume(
                entries=entries,
                t0=raw["t0"],
                t_d=ov_td,
                delta=raw.get("delta", delta or 0.0),
                index=index,
            )
        )
    return Contract(
        ovs=ovs,
        route_id=payload.get("route_id", "route"),
        aircraft_id=payload.get("aircraft_id", "aircraft"),
    )


# --------------------------------------------------
def contract_origin(payload: dict) -> GeoPoint | None:
    origin = payload.get("origin")
    return GeoPoint(**origin) if origin else None


# --------------------------------------------------
def write_contract(
    path: str | Path, contract: Contract, projection: Projection | None = None
) -> Path:
    return write_json(path, contract_to_dict(contract, projection))


# --------------------------------------------------
def box_ring(box: Box3D) -> List[Tuple[float, float]]:
    """Closed counter-clockwise ring of the box footprint (5 vertices)."""
    return [
        (box.xmin, box.ymin),
        (box.xmax, box.ymin),
        (box.xmax, box.ymax),
        (box.xmin, box.ymax),
        (box.xmin, box.ymin),
    ]


# --------------------------------------------------
def contract_footprints_geojson(
    contract: Contract, projection: Projection | None = None
) -> geojson.FeatureCollection:
    """One Polygon feature per OV entry. Coordinates are (lon, lat) when a
    projection is given, local (x, y) meters otherwise."""
    features = []
    for ov_index, ov in enumerate(contract.ovs):
        for entry in ov.entries:
            ring = box_ring(entry.region)
            if projection is not None:
                lat, lon = to_geo_arrays(
                    projection, [p[0] for p in ring], [p[1] for p in ring]
                )
                ring = list(zip(lon.tolist(), lat.tolist()))
            features.append(
                geojson.Feature(
                    geometry=geojson.Polygon([ring], precision=GEOJSON_PRECISION),
                    properties={
                        "t": entry.t,
                        "ov_index": ov_index,
                        "zmin": entry.region.zmin,
                        "zmax": entry.region.zmax,
                    },
                )
            )
    return geojson.FeatureCollection(features)
