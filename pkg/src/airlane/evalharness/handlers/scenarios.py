__all__ = [
    "resolve_fixture",
    "load_route_scenario",
    "load_planning_scenario",
]

import os
from pathlib import Path

from ...utils import get_fixture_file, read_json
from ..schemas import PlanningScenario, RouteScenario


# --------------------------------------------------
def resolve_fixture(name_or_path: str | Path) -> Path:
    """A shipped fixture name (``simple``) or a path to a JSON file."""
    candidate = Path(name_or_path)
    if candidate.suffix == ".json" and candidate.exists():
        return candidate
    shipped = Path(get_fixture_file(str(name_or_path)))
    if shipped.exists():
        return shipped
    raise FileNotFoundError(f"No scenario fixture named {name_or_path!r}")


# --------------------------------------------------
def load_route_scenario(name_or_path: str | Path) -> RouteScenario:
    return RouteScenario.model_validate(read_json(resolve_fixture(name_or_path)))


# --------------------------------------------------
def load_planning_scenario(
    name_or_path: str | Path = "reference_environment",
) -> PlanningScenario:
    return PlanningScenario.model_validate(read_json(resolve_fixture(name_or_path)))


# --------------------------------------------------
def main():
    """Make a jazz noise here"""
    from ...planner.handlers import route_length
    from ..schemas import ROUTE_SCENARIOS

    for name in ROUTE_SCENARIOS:
        scenario = load_route_scenario(name)
        route = scenario.route()
        minutes = route_length(route) / scenario.aircraft_model().cruise_tas / 60.0
        print(f"{name}: {route_length(route):.0f} m, ~{minutes:.1f} min")
    env = load_planning_scenario()
    print(f"{env.name}: {len(env.nfzs)} NFZs, direct {env.direct_distance} m")
    print(f"Fixtures in {os.path.dirname(get_fixture_file(env.name))}")


# --------------------------------------------------
if __name__ == "__main__":
    main()

    # From the repository root

    # poetry run python -m airlane.evalharness.handlers.scenarios
