__all__ = ["build_manifest", "export_plan_result", "PLAN_OUTPUT_FILES"]

from pathlib import Path
from typing import Dict

import geojson

from ... import __version__
from ...ovmodel.handlers import contract_footprints_geojson, write_contract
from ...planner.handlers import route_length, write_route_geojson, write_tree_edges
from ...utils import atomic_write_text, write_json
from ..schemas import PipelineConfig, PlanResult, RunManifest

PLAN_OUTPUT_FILES = {
    "route": "route.geojson",
    "contract": "contract.json",
    "footprints": "footprints.geojson",
    "tree": "tree.csv",
    "manifest": "manifest.json",
}


# --------------------------------------------------
def build_manifest(result: PlanResult, cfg: PipelineConfig) -> RunManifest:
    return RunManifest(
        version=__version__,
        seed=cfg.seed,
        status=str(result.status),
        repairs=result.repairs,
        config=cfg,
        n_ovs=len(result.contract.ovs),
        route_length=route_length(result.route) if result.route else None,
        verification=result.verification,
        rounds=result.rounds,
    )


# --------------------------------------------------
def _write_geojson(path: Path, obj) -> Path:
    return atomic_write_text(path, geojson.dumps(obj, sort_keys=True, indent=2) + "\n")


# --------------------------------------------------
def export_plan_result(
    result: PlanResult, cfg: PipelineConfig, out_dir: str | Path
) -> Dict[str, Path]:
    """Writes route and OV footprint GeoJSON, contract JSON, the planning tree
    edges and the run manifest into ``out_dir``.

    No wall-clock values are recorded, so equal inputs give equal bytes.
    A failed run without a route gets an empty route FeatureCollection and
    a header-only tree CSV.
    """
    out_dir = Path(out_dir)
    files = {kind: out_dir / name for kind, name in PLAN_OUTPUT_FILES.items()}
    projection = result.route.projection if result.route is not None else None
    footprints = contract_footprints_geojson(result.contract, projection)
    if result.route is not None:
        route = write_route_geojson(files["route"], result.route)
    else:
        route = _write_geojson(files["route"], geojson.FeatureCollection([]))
    return {
        "route": route,
        "contract": write_contract(files["contract"], result.contract, projection),
        "footprints": _write_geojson(files["footprints"], footprints),
        "tree": write_tree_edges(files["tree"], result.tree),
        "manifest": write_json(
            files["manifest"],
            build_manifest(result, cfg).model_dump(mode="json", by_alias=True),
        ),
    }
