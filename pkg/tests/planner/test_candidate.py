import pytest

from airlane.geo.schemas import LocalPoint
from airlane.planner.handlers import (
    CollisionChecker,
    estimate_timed_route,
    max_nodes_for_step,
    plan_candidate,
    rope_optimize,
    route_from_points,
    route_length,
)
from airlane.planner.schemas import Route
from airlane.utils import ConfigError, PlanningTimeoutError


@pytest.mark.planner
class TestPlanCandidate:
    @pytest.fixture(autouse=True)
    def setup_fixture(self):
        self.start = LocalPoint(x=0.0, y=0.0, z=7.5)
        self.goal = LocalPoint(x=3000.0, y=0.0, z=7.5)

    def test_open_field(self, open_environment):
        plan = plan_candidate(open_environment, self.start, self.goal, 200.0, seed=1)
        assert plan.route.waypoints[0] == self.start
        assert plan.route.waypoints[-1] == self.goal
        assert route_length(plan.route) >= 3000.0
        assert plan.tree.node_count <= 150

    def test_routes_around_wall(self, wall_environment):
        plan = plan_candidate(wall_environment, self.start, self.goal, 200.0, seed=1)
        assert CollisionChecker(wall_environment).path_free(plan.route.xy())
        assert max(y for _, y in plan.route.xy()) > 500.0

    def test_same_seed_same_route(self, wall_environment):
        a = plan_candidate(wall_environment, self.start, self.goal, 200.0, seed=9)
        b = plan_candidate(wall_environment, self.start, self.goal, 200.0, seed=9)
        assert a.route.xy() == b.route.xy()
        assert a.iterations == b.iterations

    def test_route_fields_are_forwarded(self, open_environment):
        plan = plan_candidate(
            open_environment,
            self.start,
            self.goal,
            200.0,
            seed=1,
            departure_time=30.0,
            speed_bounds=(16.0, 26.0),
            route_id="r-1",
        )
        assert plan.route.departure_time == 30.0
        assert plan.route.speed_bounds == (16.0, 26.0)
        assert plan.route.route_id == "r-1"

    def test_goal_inside_nfz(self, wall_environment):
        goal = LocalPoint(x=1500.0, y=0.0)
        with pytest.raises(ConfigError):
            plan_candidate(wall_environment, self.start, goal, 200.0)

    def test_iteration_budget(self, open_environment):
        with pytest.raises(PlanningTimeoutError):
            plan_candidate(
                open_environment, self.start, self.goal, 200.0, iteration_budget=3
            )

    def test_node_budget_per_step(self):
        assert max_nodes_for_step(50.0) == 300
        assert max_nodes_for_step(200.0) == 150


@pytest.mark.planner
class TestRouteFromPoints:
    def test_altitude_ramps_with_distance(self, open_environment):
        route = route_from_points(
            [(0.0, 0.0), (100.0, 0.0), (100.0, 300.0)],
            LocalPoint(x=0.0, y=0.0, z=10.0),
            LocalPoint(x=100.0, y=300.0, z=50.0),
            open_environment,
        )
        assert [w.z for w in route.waypoints] == pytest.approx([10.0, 20.0, 50.0])

    def test_duplicates_are_dropped(self, open_environment):
        route = route_from_points(
            [(0.0, 0.0), (0.0, 0.0), (50.0, 0.0)],
            LocalPoint(x=0.0, y=0.0),
            LocalPoint(x=50.0, y=0.0),
            open_environment,
        )
        assert len(route.waypoints) == 2

    def test_single_point_rejected(self, open_environment):
        with pytest.raises(ConfigError):
            route_from_points(
                [(0.0, 0.0), (0.0, 0.0)],
                LocalPoint(x=0.0, y=0.0),
                LocalPoint(x=0.0, y=0.0),
                open_environment,
            )


@pytest.mark.planner
class TestRopeOptimize:
    def test_open_field_becomes_straight(self, open_environment):
        zigzag = Route(
            waypoints=[
                LocalPoint(x=0.0, y=0.0, z=5.0),
                LocalPoint(x=500.0, y=300.0, z=5.0),
                LocalPoint(x=1000.0, y=-300.0, z=5.0),
                LocalPoint(x=1500.0, y=0.0, z=5.0),
            ],
            projection=open_environment.projection,
        )
        taut = rope_optimize(zigzag, open_environment)
        assert len(taut.waypoints) == 2
        assert route_length(taut) == pytest.approx(1500.0)

    def test_shorter_and_still_free(self, wall_environment):
        start, goal = LocalPoint(x=0.0, y=0.0), LocalPoint(x=3000.0, y=0.0)
        candidate = plan_candidate(wall_environment, start, goal, 200.0, seed=1).route
        taut = rope_optimize(candidate, wall_environment)
        assert route_length(taut) <= route_length(candidate) + 1e-9
        assert CollisionChecker(wall_environment).path_free(taut.xy())
        assert taut.waypoints[0].x == 0.0
        assert taut.waypoints[-1].x == pytest.approx(3000.0)

    def test_small_factor_never_lengthens(self, wall_environment):
        start, goal = LocalPoint(x=0.0, y=0.0), LocalPoint(x=3000.0, y=0.0)
        candidate = plan_candidate(wall_environment, start, goal, 200.0, seed=2).route
        taut = rope_optimize(candidate, wall_environment, opt_factor=1)
        assert route_length(taut) <= route_length(candidate) + 1e-9


@pytest.mark.planner
class TestTimedRoute:
    # --------------------------------------------------
    def _line(self, length: float, bounds) -> Route:
        return Route(
            waypoints=[
                LocalPoint(x=0.0, y=0.0),
                LocalPoint(x=length / 2, y=0.0),
                LocalPoint(x=length, y=0.0),
            ],
            speed_bounds=bounds,
        )

    def test_fixed_speed(self):
        timed = estimate_timed_route(self._line(1000.0, (20.0, 20.0)))
        assert timed[-1].earliest_arrival == pytest.approx(50.0)
        assert timed[-1].latest_arrival == pytest.approx(50.0)
        assert timed[1].distance == pytest.approx(500.0)

    def test_speed_interval(self):
        timed = estimate_timed_route(self._line(2600.0, (16.0, 26.0)))
        assert timed[-1].earliest_arrival == pytest.approx(100.0)
        assert timed[-1].latest_arrival == pytest.approx(162.5)
        for wp in timed:
            assert wp.earliest_arrival <= wp.latest_arrival

    def test_departure_offsets_everything(self):
        route = self._line(1000.0, (20.0, 20.0)).model_copy(
            update={"departure_time": 100.0}
        )
        assert estimate_timed_route(route)[0].earliest_arrival == 100.0
        assert estimate_timed_route(route)[-1].latest_arrival == pytest.approx(150.0)

    def test_speed_must_be_positive(self):
        with pytest.raises(ConfigError):
            estimate_timed_route(self._line(1000.0, (0.0, 20.0)))
