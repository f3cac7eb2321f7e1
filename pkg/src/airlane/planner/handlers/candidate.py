__all__ = [
    "CandidatePlan",
    "plan_candidate",
    "route_from_points",
    "route_length",
    "DEFAULT_ITERATION_BUDGET",
    "DEFAULT_MAX_NODES",
    "max_nodes_for_step",
]

from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from ...config import logger
from ...geo.schemas import LocalPoint
from ...utils import ConfigError, PlanningTimeoutError
from ..schemas import Environment, Route
from .collision import ArrivalTiming, CollisionChecker
from .tree import DEFAULT_GOAL_BIAS, PlanTree, grow

DEFAULT_ITERATION_BUDGET = 50_000
DEFAULT_MAX_NODES = 150


# --------------------------------------------------
def max_nodes_for_step(step: float) -> int:
    """Node budget per step size: 300 for fine 50 m steps, 150 otherwise."""
    return 300 if step <= 50 else DEFAULT_MAX_NODES


# --------------------------------------------------
@dataclass
class CandidatePlan:
    route: Route
    tree: PlanTree
    iterations: int


# --------------------------------------------------
def route_length(route: Route | Sequence[Tuple[float, float]]) -> float:
    pts = np.asarray(route.xy() if isinstance(route, Route) else route, dtype=float)
    return float(np.hypot(*np.diff(pts, axis=0).T).sum())


# --------------------------------------------------
def route_from_points(
    points: List[Tuple[float, float]],
    origin: LocalPoint,
    goal: LocalPoint,
    env: Environment,
    template: Route | None = None,
    **overrides,
) -> Route:
    """Builds a Route over ``points``; altitude ramps linearly with distance
    from the origin altitude to the goal altitude."""
    pts = [points[0]]
    for p in points[1:]:
        if p[0] != pts[-1][0] or p[1] != pts[-1][1]:
            pts.append(p)
    if len(pts) < 2:
        raise ConfigError("A route needs two distinct points")
    seg = np.hypot(*np.diff(np.asarray(pts), axis=0).T)
    along = np.concatenate([[0.0], np.cumsum(seg)])
    frac = along / along[-1] if along[-1] > 0 else np.zeros_like(along)
    z = origin.z + frac * (goal.z - origin.z)
    values = {
        "waypoints": [
            LocalPoint(x=float(x), y=float(y), z=float(zz))
            for (x, y), zz in zip(pts, z)
        ],
        "projection": env.projection,
    }
    if template is not None:
        values.update(
            departure_time=template.departure_time,
            speed_bounds=template.speed_bounds,
            route_id=template.route_id,
        )
    values.update(overrides)
    return Route(**values)


# --------------------------------------------------
def plan_candidate(
    env: Environment,
    origin: LocalPoint,
    goal: LocalPoint,
    step: float,
    max_nodes: int = DEFAULT_MAX_NODES,
    iteration_budget: int = DEFAULT_ITERATION_BUDGET,
    seed: int = 0,
    goal_bias: float = DEFAULT_GOAL_BIAS,
    **route_fields,
) -> CandidatePlan:
    """Grows an RRT*FND tree until the goal is connected.

    Raises PlanningTimeoutError once ``iteration_budget`` grow calls pass
    without a solution; callers re-seed or relax parameters.
    """
    for label, p in (("origin", origin), ("goal", goal)):
        problem = env.endpoint_problem(p)
        if problem:
            raise ConfigError(f"Planning {label} {problem}")
    timing = ArrivalTiming.from_route_fields(**route_fields)
    checker = CollisionChecker(env, timing=timing)
    tree = PlanTree((origin.x, origin.y), max_nodes=max_nodes, seed=seed)
    target = (goal.x, goal.y)
    for iteration in range(1, iteration_budget + 1):
        grow(tree, env, step, target, goal_bias, checker=checker)
        if tree.solution_path is not None:
            logger.debug(
                f"Candidate found after {iteration} iterations "
                f"({tree.node_count} nodes, cost {tree.cost[tree.goal_id]:.1f} m)"
            )
            route = route_from_points(
                tree.path_points(tree.solution_path), origin, goal, env, **route_fields
            )
            return CandidatePlan(route=route, tree=tree, iterations=iteration)
    logger.warning(f"No candidate route within {iteration_budget} iterations")
    raise PlanningTimeoutError(
        f"Goal not connected after {iteration_budget} grow iterations"
    )
