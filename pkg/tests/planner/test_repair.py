import pytest

from airlane.geo.schemas import LocalPoint
from airlane.ovmodel.schemas import NoFlyZone
from airlane.planner.handlers import (
    CollisionChecker,
    inflate_nfz,
    plan_candidate,
    repair_with_obstacle,
    sever_and_repair,
)
from airlane.planner.schemas import Conflict
from airlane.utils import RepairFailedError


@pytest.mark.planner
class TestRepairWithObstacle:
    @pytest.fixture(autouse=True)
    def setup_fixture(self, open_environment):
        self.env = open_environment
        self.start = LocalPoint(x=0.0, y=0.0, z=7.5)
        self.goal = LocalPoint(x=3000.0, y=0.0, z=7.5)
        self.plan = plan_candidate(self.env, self.start, self.goal, 200.0, seed=1)

    # --------------------------------------------------
    def _repair(self, obstacle: NoFlyZone, **kwargs):
        return repair_with_obstacle(
            self.plan.tree,
            [obstacle],
            self.env,
            200.0,
            self.start,
            self.goal,
            template=self.plan.route,
            **kwargs,
        )

    def test_route_avoids_new_obstacle(self):
        block = NoFlyZone.from_rectangle("block", 1400.0, -1000.0, 1600.0, 500.0)
        outcome = self._repair(block)
        checker = CollisionChecker(outcome.env)
        assert checker.path_free(outcome.route.xy())
        assert outcome.route.waypoints[0] == self.start
        assert outcome.route.waypoints[-1] == self.goal
        assert [z.id for z in outcome.env.nfzs] == ["block"]

    def test_node_budget_holds(self):
        block = NoFlyZone.from_rectangle("block", 1400.0, -1000.0, 1600.0, 500.0)
        outcome = self._repair(block)
        assert outcome.tree.node_count <= outcome.tree.max_nodes

    def test_template_fields_survive(self):
        block = NoFlyZone.from_rectangle("block", 1400.0, -200.0, 1600.0, 200.0)
        outcome = self._repair(block)
        assert outcome.route.route_id == self.plan.route.route_id
        assert outcome.route.speed_bounds == self.plan.route.speed_bounds

    def test_untouched_route_is_kept(self):
        far = NoFlyZone.from_rectangle("far", 3200.0, 800.0, 3400.0, 950.0)
        before = self.plan.route.xy()
        outcome = self._repair(far)
        assert outcome.reconnected
        assert outcome.iterations == 0
        assert outcome.route.xy() == before

    def test_full_corridor_fails(self):
        corridor = NoFlyZone.from_rectangle("corridor", 1400.0, -1000.0, 1600.0, 1000.0)
        with pytest.raises(RepairFailedError):
            self._repair(corridor, iteration_budget=300)

    def test_goal_swallowed(self):
        cover = NoFlyZone.from_rectangle("cover", 2900.0, -100.0, 3100.0, 100.0)
        with pytest.raises(RepairFailedError):
            self._repair(cover)


@pytest.mark.planner
class TestSeverAndRepair:
    def test_conflict_without_obstacle(self, open_environment):
        start, goal = LocalPoint(x=0.0, y=0.0), LocalPoint(x=3000.0, y=0.0)
        plan = plan_candidate(open_environment, start, goal, 200.0, seed=1)
        conflict = Conflict(
            segment_index=0,
            contract_index=0,
            route_id="foreign",
            ov_index=0,
            entry_index=0,
            point=LocalPoint(x=100.0, y=0.0),
            t=5.0,
            probability=0.5,
            arrival_window=(4.0, 6.0),
        )
        with pytest.raises(RepairFailedError):
            sever_and_repair(plan.tree, conflict, open_environment, 200.0, start, goal)

    def test_conflict_obstacle_is_avoided(self, open_environment):
        start, goal = LocalPoint(x=0.0, y=0.0), LocalPoint(x=3000.0, y=0.0)
        plan = plan_candidate(open_environment, start, goal, 200.0, seed=3)
        zone = NoFlyZone.from_rectangle("foreign-ov0", 1000.0, -300.0, 1200.0, 300.0)
        conflict = Conflict(
            segment_index=0,
            contract_index=0,
            route_id="foreign",
            ov_index=0,
            entry_index=4,
            point=LocalPoint(x=1000.0, y=0.0),
            t=50.0,
            probability=1.0,
            arrival_window=(50.0, 50.0),
            obstacle=[zone],
        )
        outcome = sever_and_repair(
            plan.tree, conflict, open_environment, 200.0, start, goal
        )
        assert CollisionChecker(outcome.env).path_free(outcome.route.xy())


@pytest.mark.planner
class TestInflateNfz:
    def test_square_corners(self):
        zone = NoFlyZone.from_rectangle("z", 0.0, 0.0, 100.0, 50.0, alt_range=(0, 60))
        grown = inflate_nfz(zone, 10.0)
        assert grown.shape().bounds == pytest.approx((-10.0, -10.0, 110.0, 60.0))
        assert grown.shape().area == pytest.approx(120.0 * 70.0)
        assert grown.alt_range == (0.0, 60.0)
        assert grown.id == "z-inflated"

    def test_zero_margin(self):
        zone = NoFlyZone.from_rectangle("z", 0.0, 0.0, 100.0, 50.0)
        assert inflate_nfz(zone, 0.0) is zone
