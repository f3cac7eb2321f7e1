import pytest

from airlane.utils import write_json


@pytest.fixture(scope="session")
def short_scenario(tmp_path_factory):
    """Two-leg, 900 m route file in the shipped fixture format."""
    path = tmp_path_factory.mktemp("scenarios") / "short.json"
    write_json(
        path,
        {
            "name": "short",
            "origin": {"lat": 51.45, "lon": -2.6, "alt": 0.0},
            "aircraft": "octocopter",
            "speed_bounds": [18.0, 18.0],
            "waypoints": [
                {"x": 0.0, "y": 0.0, "z": 7.5},
                {"x": 500.0, "y": 0.0, "z": 7.5},
                {"x": 800.0, "y": 300.0, "z": 7.5},
            ],
        },
    )
    return str(path)
