import json
import xml.etree.ElementTree as ET
from collections import Counter

import geojson
import pandas as pd
import pytest

from airlane.cli.services import (
    EXIT_INPUT_ERROR,
    EXIT_OK,
    cmd_eval,
    cmd_plan,
    cmd_render,
    cmd_simulate,
)
from airlane.geo.handlers import make_projection
from airlane.geo.schemas import GeoPoint
from airlane.ovmodel.handlers import write_contract
from airlane.ovmodel.schemas import Contract
from airlane.pipeline.handlers import PLAN_OUTPUT_FILES
from airlane.utils import write_json

from ..ovmodel.factories import make_contract
from .conftest import DESTINATION, ORIGIN, scenario_payload

SVG_NS = "{http://www.w3.org/2000/svg}"


# --------------------------------------------------
def _polygons_per_ov(svg_path) -> Counter:
    """Footprint polygons drawn inside each ``<g id="ov-i">`` group."""
    counts = Counter()
    for group in ET.parse(svg_path).getroot().iter(f"{SVG_NS}g"):
        gid = group.get("id", "")
        if gid.startswith("ov-"):
            # Large collections are drawn as <use> stamps of <defs> paths.
            uses = len(list(group.iter(f"{SVG_NS}use")))
            counts[gid] = uses or len(list(group.iter(f"{SVG_NS}path")))
    return counts


# --------------------------------------------------
def _square_around(point: dict, half: float = 0.001) -> list:
    lat, lon = point["lat"], point["lon"]
    return [
        {"lat": lat - half, "lon": lon - half},
        {"lat": lat - half, "lon": lon + half},
        {"lat": lat + half, "lon": lon + half},
        {"lat": lat + half, "lon": lon - half},
    ]


@pytest.mark.cli
class TestPlanCommand:
    def test_writes_every_output(self, planned):
        assert sorted(p.name for p in planned.iterdir()) == [
            "contract.json",
            "footprints.geojson",
            "manifest.json",
            "route.geojson",
            "tree.csv",
        ]
        manifest = json.loads((planned / "manifest.json").read_text())
        assert manifest["status"] == "accepted"
        assert manifest["seed"] == 11
        assert manifest["config"]["t_d"] == 30
        route = geojson.loads((planned / "route.geojson").read_text())
        assert route.is_valid
        contract = json.loads((planned / "contract.json").read_text())
        assert contract["route_id"] == "short-hop"
        assert contract["origin"]["lat"] == pytest.approx(ORIGIN["lat"])
        assert len(contract["ovs"]) == manifest["n_ovs"]

    def test_rerun_is_byte_identical(self, planned, scenario_path, tmp_path):
        assert cmd_plan(scenario_path, tmp_path) == EXIT_OK
        for name in PLAN_OUTPUT_FILES.values():
            assert (tmp_path / name).read_bytes() == (planned / name).read_bytes()

    def test_footprints_match_the_rendered_contract(self, planned, tmp_path):
        footprints = geojson.loads((planned / "footprints.geojson").read_text())
        assert footprints.is_valid
        per_ov = Counter(
            f"ov-{f['properties']['ov_index']}" for f in footprints["features"]
        )
        svg = tmp_path / "contract.svg"
        assert cmd_render(planned / "contract.json", svg) == EXIT_OK
        assert _polygons_per_ov(svg) == per_ov
        contract = json.loads((planned / "contract.json").read_text())
        n_entries = sum(len(ov["entries"]) for ov in contract["ovs"])
        assert sum(per_ov.values()) == len(footprints["features"]) == n_entries
        lon, lat = footprints["features"][0]["geometry"]["coordinates"][0][0]
        assert lat == pytest.approx(ORIGIN["lat"], abs=0.01)
        assert lon == pytest.approx(ORIGIN["lon"], abs=0.01)

    def test_tree_edges_hold_the_solution(self, planned):
        edges = pd.read_csv(planned / "tree.csv")
        assert len(edges) > 0
        assert edges["on_solution"].sum() >= 1

    def test_flag_overrides_win(self, scenario_path, tmp_path):
        assert cmd_plan(scenario_path, tmp_path, {"seed": 12, "t_d": None}) == 0
        manifest = json.loads((tmp_path / "manifest.json").read_text())
        assert manifest["seed"] == 12
        assert manifest["config"]["uncertainty"]["seed"] == 12
        assert manifest["config"]["t_d"] == 30

    def test_goal_inside_nfz(self, scenario_dir, tmp_path):
        nfz = {"id": "pad", "polygon": _square_around(DESTINATION)}
        path = write_json(
            scenario_dir / "blocked.json", scenario_payload(nfzs=[nfz])
        )
        assert cmd_plan(path, tmp_path) == EXIT_INPUT_ERROR
        assert not list(tmp_path.iterdir())

    def test_malformed_json(self, scenario_dir, tmp_path):
        path = scenario_dir / "broken.json"
        path.write_text('{"name": "broken",\n "origin": }')
        assert cmd_plan(path, tmp_path) == EXIT_INPUT_ERROR

    def test_invalid_field(self, scenario_dir, tmp_path):
        path = write_json(
            scenario_dir / "bad_lat.json",
            scenario_payload(origin={"lat": 123.0, "lon": 0.0}),
        )
        assert cmd_plan(path, tmp_path) == EXIT_INPUT_ERROR

    def test_missing_scenario(self, tmp_path):
        assert cmd_plan(tmp_path / "nope.json", tmp_path) == EXIT_INPUT_ERROR

    def test_invalid_override(self, scenario_path, tmp_path):
        assert cmd_plan(scenario_path, tmp_path, {"delta": 50.0}) == EXIT_INPUT_ERROR

    def test_missing_foreign_contract(self, scenario_dir, tmp_path):
        path = write_json(
            scenario_dir / "foreign.json",
            scenario_payload(foreign_contracts=["missing_contract.json"]),
        )
        assert cmd_plan(path, tmp_path) == EXIT_INPUT_ERROR


@pytest.mark.cli
class TestRenderCommand:
    def test_one_group_per_ov(self, tmp_path):
        contract_path = write_contract(
            tmp_path / "contract.json",
            make_contract(n_ovs=3),
            make_projection(GeoPoint(**ORIGIN)),
        )
        out = tmp_path / "contract.svg"
        assert cmd_render(contract_path, out) == EXIT_OK
        svg = out.read_text()
        assert svg.lstrip().startswith("<?xml")
        for i in range(3):
            assert f'<g id="ov-{i}"' in svg
        assert '<g id="ov-3"' not in svg

    def test_svg_is_reproducible(self, tmp_path):
        contract_path = write_contract(tmp_path / "c.json", make_contract(n_ovs=2))
        assert cmd_render(contract_path, tmp_path / "a.svg") == EXIT_OK
        assert cmd_render(contract_path, tmp_path / "b.svg") == EXIT_OK
        assert (tmp_path / "a.svg").read_bytes() == (tmp_path / "b.svg").read_bytes()

    def test_empty_contract(self, tmp_path):
        contract_path = write_contract(tmp_path / "empty.json", Contract())
        out = tmp_path / "empty.svg"
        assert cmd_render(contract_path, out) == EXIT_OK
        svg = out.read_text()
        assert "</svg>" in svg
        assert 'id="ov-0"' not in svg

    def test_with_route_and_scenario(self, planned, scenario_path, tmp_path):
        out = tmp_path / "planned.svg"
        code = cmd_render(
            planned / "contract.json",
            out,
            route_path=planned / "route.geojson",
            scenario_path=scenario_path,
        )
        assert code == EXIT_OK
        assert 'id="route' in out.read_text()

    def test_missing_contract(self, tmp_path):
        assert cmd_render(tmp_path / "x.json", tmp_path / "x.svg") == EXIT_INPUT_ERROR

    def test_not_a_contract(self, tmp_path):
        path = write_json(tmp_path / "other.json", {"ovs": [{"t0": 0}]})
        assert cmd_render(path, tmp_path / "x.svg") == EXIT_INPUT_ERROR


@pytest.mark.cli
class TestSimulateCommand:
    def test_writes_every_logged_state(self, tmp_path):
        out = tmp_path / "batch.csv"
        code = cmd_simulate("simple", out, {"n_aircraft": 20, "seed": 4}, duration=30)
        assert code == EXIT_OK
        df = pd.read_csv(out)
        # nominal trajectory plus 20 sampled aircraft, 31 samples each
        assert df["traj_id"].nunique() == 21
        assert len(df) == 21 * 31
        assert list(df.columns) == [
            "traj_id",
            "t",
            "lat",
            "lon",
            "alt",
            "heading",
            "vs",
            "tas",
        ]

    def test_unknown_scenario(self, tmp_path):
        assert cmd_simulate("volcano", tmp_path / "x.csv") == EXIT_INPUT_ERROR

    def test_invalid_override(self, tmp_path):
        code = cmd_simulate("simple", tmp_path / "x.csv", {"n_aircraft": 3})
        assert code == EXIT_INPUT_ERROR


@pytest.mark.cli
class TestEvalCommand:
    def test_unknown_suite(self, tmp_path):
        assert cmd_eval("benchmarks", None, tmp_path) == EXIT_INPUT_ERROR
        assert not list(tmp_path.iterdir())

    def test_invalid_spec(self, tmp_path):
        assert cmd_eval("inclusion", "volcano", tmp_path) == EXIT_INPUT_ERROR

    def test_planning_report(self, tmp_path):
        code = cmd_eval("planning", None, tmp_path, {"step": 200.0, "seeds": [1]})
        assert code == EXIT_OK
        df = pd.read_csv(tmp_path / "planning_reference_environment.csv")
        assert df["status"].tolist() == ["ok"]
        assert (tmp_path / "planning_reference_environment.md").exists()
