import pytest

from airlane.geo.schemas import LocalPoint
from airlane.ovmodel.schemas import Box3D
from airlane.planner.handlers import (
    ArrivalTiming,
    CollisionChecker,
    plan_candidate,
    rope_optimize,
)
from airlane.planner.schemas import DynamicObstacle

LINE = [(0.0, 0.0), (3000.0, 0.0)]
LEGS = [(0.0, 0.0), (900.0, 0.0), (2100.0, 0.0), (3000.0, 0.0)]


# --------------------------------------------------
def _moving(env, active, xmin=1000.0, ymin=-1000.0, xmax=2000.0, ymax=1000.0):
    box = Box3D(xmin=xmin, ymin=ymin, zmin=0.0, xmax=xmax, ymax=ymax, zmax=120.0)
    obstacle = DynamicObstacle(footprint=box, active=active, source="foreign/ov-0")
    return env.model_copy(update={"dynamic_obstacles": [obstacle]})


@pytest.mark.planner
class TestDynamicObstacles:
    @pytest.fixture(autouse=True)
    def setup_fixture(self, open_environment):
        self.env = open_environment
        self.start = LocalPoint(x=0.0, y=0.0, z=7.5)
        self.goal = LocalPoint(x=3000.0, y=0.0, z=7.5)

    def test_active_box_blocks_the_line(self):
        env = _moving(self.env, (0.0, 1e6))
        assert not CollisionChecker(env).path_free(LINE)
        assert not CollisionChecker(env, timing=ArrivalTiming()).path_free(LINE)
        assert CollisionChecker(env).path_free([(0.0, 0.0), (900.0, 0.0)])

    def test_point_queries_stay_static(self):
        checker = CollisionChecker(_moving(self.env, (0.0, 1e6)))
        assert checker.has_dynamic
        assert checker.point_free(1500.0, 0.0)
        assert not checker.segment_free((1500.0, 0.0), (1500.0, 0.0))

    def test_inactive_window_is_ignored(self):
        env = _moving(self.env, (500.0, 600.0))
        assert CollisionChecker(env, timing=ArrivalTiming()).path_free(LINE)
        # Without timing every dynamic obstacle counts as active.
        assert not CollisionChecker(env).path_free(LINE)

    def test_window_follows_distance_flown(self):
        timing = ArrivalTiming(departure=0.0, min_speed=18.0, max_speed=18.0)
        gone = _moving(self.env, (0.0, 40.0))
        assert CollisionChecker(gone, timing=timing).path_free(LEGS)
        still_there = _moving(self.env, (0.0, 60.0))
        assert not CollisionChecker(still_there, timing=timing).path_free(LEGS)

    def test_speed_bounds_widen_the_window(self):
        env = _moving(self.env, (100.0, 110.0))
        legs = LEGS[:3]
        fixed = ArrivalTiming(min_speed=30.0, max_speed=30.0)
        loose = ArrivalTiming(min_speed=15.0, max_speed=30.0)
        assert CollisionChecker(env, timing=fixed).path_free(legs)
        assert not CollisionChecker(env, timing=loose).path_free(legs)

    def test_vectorized_costs(self):
        env = _moving(self.env, (0.0, 40.0))
        checker = CollisionChecker(env, timing=ArrivalTiming())
        ends = [(2100.0, 0.0), (2100.0, 0.0)]
        free = checker.segments_free((900.0, 0.0), ends, cost=[0.0, 900.0])
        assert free.tolist() == [False, True]

    def test_timing_from_route_fields(self):
        timing = ArrivalTiming.from_route_fields(
            departure_time=30.0, speed_bounds=(16.0, 26.0), route_id="r-1"
        )
        assert timing == ArrivalTiming(departure=30.0, min_speed=16.0, max_speed=26.0)
        assert ArrivalTiming.from_route_fields(cruise_speed=12.0).max_speed == 12.0
        assert ArrivalTiming.from_route_fields() == ArrivalTiming()

    def test_candidate_routes_around_active_obstacle(self):
        env = _moving(self.env, (0.0, 1e6), xmin=1400.0, xmax=1600.0, ymax=500.0)
        plan = plan_candidate(env, self.start, self.goal, 200.0, seed=1)
        assert CollisionChecker(env).path_free(plan.route.xy())
        assert max(y for _, y in plan.route.xy()) > 500.0
        taut = rope_optimize(plan.route, env)
        assert CollisionChecker(env).path_free(taut.xy())

    def test_expired_obstacle_changes_nothing(self):
        env = _moving(self.env, (0.0, 1.0), xmin=1400.0, xmax=1600.0, ymax=500.0)
        kwargs = dict(seed=1, departure_time=10.0)
        a = plan_candidate(env, self.start, self.goal, 200.0, **kwargs)
        b = plan_candidate(self.env, self.start, self.goal, 200.0, **kwargs)
        assert a.route.xy() == b.route.xy()
