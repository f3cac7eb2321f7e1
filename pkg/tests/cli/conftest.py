import pytest

from airlane.cli.services import cmd_plan
from airlane.utils import write_json

ORIGIN = {"lat": 51.45, "lon": -2.6}
# about 600 m east of the origin
DESTINATION = {"lat": 51.45, "lon": -2.5914}

FAST_PIPELINE = {
    "t_d": 30,
    "delta": 5.0,
    "n_aircraft": 40,
    "verification_threshold": 0.8,
    "step": 100.0,
}


# --------------------------------------------------
def scenario_payload(**overrides) -> dict:
    payload = {
        "name": "short-hop",
        "origin": ORIGIN,
        "destination": DESTINATION,
        "seed": 11,
        "pipeline": dict(FAST_PIPELINE),
    }
    payload.update(overrides)
    return payload


@pytest.fixture(scope="session")
def scenario_dir(tmp_path_factory):
    return tmp_path_factory.mktemp("scenarios")


@pytest.fixture(scope="session")
def scenario_path(scenario_dir):
    return write_json(scenario_dir / "short_hop.json", scenario_payload())


@pytest.fixture(scope="session")
def planned(scenario_path, tmp_path_factory):
    """Output directory of one accepted ``plan`` run."""
    out = tmp_path_factory.mktemp("plan")
    assert cmd_plan(scenario_path, out) == 0
    return out
