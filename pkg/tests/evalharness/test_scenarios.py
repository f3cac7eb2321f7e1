import pytest
from pydantic import ValidationError

from airlane.evalharness.handlers import (
    load_planning_scenario,
    load_route_scenario,
    resolve_fixture,
)
from airlane.evalharness.schemas import ROUTE_SCENARIOS, RouteScenario
from airlane.planner.handlers import CollisionChecker, route_length


@pytest.mark.evalharness
class TestRouteScenarios:
    @pytest.mark.parametrize("name", ROUTE_SCENARIOS)
    def test_shipped_routes_load(self, name):
        scenario = load_route_scenario(name)
        route = scenario.route()
        assert scenario.name == name
        assert route.route_id == name
        assert route.projection.origin == scenario.origin
        if scenario.expected_minutes:
            cruise = scenario.aircraft_model().cruise_tas
            minutes = route_length(route) / cruise / 60.0
            assert minutes == pytest.approx(scenario.expected_minutes, rel=0.25)

    def test_custom_file(self, short_scenario):
        scenario = load_route_scenario(short_scenario)
        assert scenario.name == "short"
        assert route_length(scenario.route()) == pytest.approx(500.0 + 300.0 * 2**0.5)

    def test_departure_time(self):
        route = load_route_scenario("simple").route(departure_time=42.0)
        assert route.departure_time == 42.0

    def test_unknown_fixture(self):
        with pytest.raises(FileNotFoundError):
            resolve_fixture("does-not-exist")

    def test_unknown_aircraft(self):
        with pytest.raises(ValidationError):
            RouteScenario(
                name="x",
                origin={"lat": 0.0, "lon": 0.0},
                aircraft="blimp",
                waypoints=[{"x": 0, "y": 0}, {"x": 10, "y": 0}],
            )


@pytest.mark.evalharness
class TestPlanningScenario:
    def test_reference_environment(self):
        scenario = load_planning_scenario()
        env = scenario.environment()
        assert env.endpoint_problem(scenario.start) is None
        assert env.endpoint_problem(scenario.goal) is None
        assert len(env.nfzs) >= 2
        assert scenario.start.distance_2d(scenario.goal) == pytest.approx(
            scenario.direct_distance
        )

    def test_direct_line_is_blocked(self):
        scenario = load_planning_scenario()
        checker = CollisionChecker(scenario.environment())
        start, goal = scenario.start, scenario.goal
        assert not checker.segment_free((start.x, start.y), (goal.x, goal.y))
