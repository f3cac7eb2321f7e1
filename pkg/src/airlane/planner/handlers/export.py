__all__ = [
    "route_to_geojson",
    "tree_edges_to_dataframe",
    "write_route_geojson",
    "write_tree_edges",
]

from pathlib import Path
from typing import Optional

import geojson
import pandas as pd

from ...geo.handlers import to_geo_arrays
from ...ovmodel.handlers import GEOJSON_PRECISION
from ...utils import atomic_write_text, round_significant, write_csv
from ..schemas import Route
from .tree import PlanTree


# --------------------------------------------------
def route_to_geojson(route: Route) -> geojson.Feature:
    """LineString in (lon, lat, alt) through the route projection."""
    xs = [w.x for w in route.waypoints]
    ys = [w.y for w in route.waypoints]
    lat, lon = to_geo_arrays(route.projection, xs, ys)
    coords = [
        (
            round_significant(lo, 12),
            round_significant(la, 12),
            round_significant(w.z, 12),
        )
        for lo, la, w in zip(lon.tolist(), lat.tolist(), route.waypoints)
    ]
    properties = {
        "route_id": route.route_id,
        "departure_time": route.departure_time,
        "speed_bounds": list(route.speed_bounds),
    }
    if route.waypoint_speeds is not None:
        properties["waypoint_speeds"] = list(route.waypoint_speeds)
    line = geojson.LineString(coords, precision=GEOJSON_PRECISION)
    return geojson.Feature(geometry=line, properties=properties)


# --------------------------------------------------
def write_route_geojson(path: str | Path, route: Route) -> Path:
    feature = route_to_geojson(route)
    text = geojson.dumps(feature, sort_keys=True, indent=2) + "\n"
    return atomic_write_text(path, text)


# --------------------------------------------------
def tree_edges_to_dataframe(tree: Optional[PlanTree]) -> pd.DataFrame:
    """One row per parent-child edge, for plotting the tree. No tree, no rows."""
    edges = tree.edges() if tree is not None else []
    rows = [
        {
            "child": child,
            "parent": parent,
            "x0": float(tree.pos[parent, 0]),
            "y0": float(tree.pos[parent, 1]),
            "x1": float(tree.pos[child, 0]),
            "y1": float(tree.pos[child, 1]),
            "attached": bool(tree.attached[child]),
            "on_solution": bool(
                tree.solution_path is not None and child in tree.solution_path
            ),
        }
        for child, parent in edges
    ]
    columns = ["child", "parent", "x0", "y0", "x1", "y1", "attached", "on_solution"]
    return pd.DataFrame(rows, columns=columns)


# --------------------------------------------------
def write_tree_edges(path: str | Path, tree: Optional[PlanTree]) -> Path:
    return write_csv(path, tree_edges_to_dataframe(tree))
