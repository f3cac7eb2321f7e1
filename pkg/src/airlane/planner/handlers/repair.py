__all__ = [
    "RepairOutcome",
    "repair_with_obstacle",
    "sever_and_repair",
    "inflate_nfz",
    "DEFAULT_REPAIR_BUDGET",
]

from collections import defaultdict, deque
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence

import numpy as np
import shapely

from ...config import logger
from ...geo.schemas import LocalPoint
from ...ovmodel.schemas import NoFlyZone
from ...utils import RepairFailedError
from ..schemas import Conflict, Environment, Route
from .candidate import route_from_points
from .collision import ArrivalTiming, CollisionChecker
from .tree import DEFAULT_GOAL_BIAS, NEIGHBOR_FACTOR, PlanTree, grow

DEFAULT_REPAIR_BUDGET = 20_000


# --------------------------------------------------
@dataclass
class RepairOutcome:
    tree: PlanTree
    route: Route
    env: Environment
    reconnected: bool
    iterations: int


# --------------------------------------------------
def inflate_nfz(nfz: NoFlyZone, margin: float, suffix: str = "inflated") -> NoFlyZone:
    """Square-cornered outward buffer of the NFZ polygon."""
    if margin <= 0:
        return nfz
    grown = nfz.shape().buffer(margin, join_style="mitre")
    coords = list(shapely.Polygon(grown.exterior).exterior.coords)[:-1]
    return NoFlyZone(
        id=f"{nfz.id}-{suffix}",
        polygon=[LocalPoint(x=x, y=y) for x, y in coords],
        alt_range=nfz.alt_range,
    )


# --------------------------------------------------
def _orphan_distances(
    tree: PlanTree, nodes: Sequence[int], source: int
) -> Dict[int, float]:
    """Path length inside a detached subtree from ``source`` to every node,
    following parent links in both directions."""
    members = set(nodes)
    adjacency = defaultdict(list)
    for i in nodes:
        p = int(tree.parent[i])
        if p >= 0 and p in members:
            d = tree.distance(p, tree.pos[i])
            adjacency[i].append((p, d))
            adjacency[p].append((i, d))
    dist = {source: 0.0}
    queue = deque([source])
    while queue:
        node = queue.popleft()
        for nb, d in adjacency[node]:
            if nb not in dist:
                dist[nb] = dist[node] + d
                queue.append(nb)
    return dist


# --------------------------------------------------
def _attach(tree: PlanTree, orphan: int, anchor: int) -> None:
    tree.reroot(orphan)
    tree.set_parent(orphan, anchor)
    tree.update_solution()


# --------------------------------------------------
def _sever(tree: PlanTree, checker: CollisionChecker) -> None:
    for i in np.flatnonzero(tree.alive):
        if i != 0 and not checker.point_free(*tree.pos[i]):
            tree.remove_node(int(i))
    for child, parent in tree.edges():
        a, b = tuple(tree.pos[parent]), tuple(tree.pos[child])
        if not checker.segment_free(a, b, cost=tree.cost[parent]):
            tree.detach(child)
    tree.update_solution()


# --------------------------------------------------
def _reconnect(
    tree: PlanTree, orphans: List[int], checker: CollisionChecker, radius: float
) -> bool:
    to_goal = _orphan_distances(tree, orphans, tree.goal_id)
    best = None
    for o in orphans:
        anchors = tree.near(tuple(tree.pos[o]), radius)
        if anchors.size == 0:
            continue
        reachable = checker.segments_free(
            tuple(tree.pos[o]), tree.pos[anchors], cost=tree.cost[anchors]
        )
        free = anchors[reachable]
        if free.size == 0:
            continue
        total = (
            tree.cost[free]
            + np.hypot(*(tree.pos[free] - tree.pos[o]).T)
            + to_goal[o]
        )
        k = int(np.argmin(total))
        if best is None or total[k] < best[0]:
            best = (float(total[k]), o, int(free[k]))
    if best is None:
        return False
    _attach(tree, best[1], best[2])
    return True


# --------------------------------------------------
def repair_with_obstacle(
    tree: PlanTree,
    obstacles: Sequence[NoFlyZone],
    env: Environment,
    step: float,
    origin: LocalPoint,
    goal: LocalPoint,
    template: Optional[Route] = None,
    iteration_budget: int = DEFAULT_REPAIR_BUDGET,
    goal_bias: float = DEFAULT_GOAL_BIAS,
) -> RepairOutcome:
    """Adds ``obstacles`` to the environment as static no-fly zones and
    repairs the tree around them.

    Nodes inside the obstacles are deleted and blocked edges cut. Of the
    detached subtrees only the one holding the goal survives; Reconnect tries
    to hang it directly onto the main tree, otherwise Regrow extends the main
    tree until a new node sees one of its nodes. Detached nodes still count
    towards the node budget and are never force-removed.
    """
    for nfz in obstacles:
        env = env.with_nfz(nfz)
    for label, p in (("origin", origin), ("goal", goal)):
        problem = env.endpoint_problem(p)
        if problem:
            raise RepairFailedError(
                f"Route {label} {problem} after adding the obstacle"
            )

    timing = ArrivalTiming.from_route(template) if template is not None else None
    checker = CollisionChecker(env, timing=timing)
    _sever(tree, checker)
    if tree.goal_id is None:
        raise RepairFailedError("Plan tree holds no goal node to repair towards")

    detached = np.flatnonzero(tree.alive & ~tree.attached)
    top = tree.path_to_root(tree.goal_id)[-1]
    keep = set(tree.subtree(top)) if not tree.attached[tree.goal_id] else set()
    for i in detached:
        if int(i) not in keep and tree.alive[i]:
            tree.remove_node(int(i))

    reconnected, iterations = True, 0
    radius = NEIGHBOR_FACTOR * step
    if keep and not _reconnect(tree, sorted(keep), checker, radius):
        reconnected = False
        target = (goal.x, goal.y)
        for iterations in range(1, iteration_budget + 1):
            node = grow(tree, env, step, target, goal_bias, checker=checker)
            if node is None:
                continue
            orphans = np.flatnonzero(tree.alive & ~tree.attached)
            close = orphans[np.hypot(*(tree.pos[orphans] - tree.pos[node]).T) <= step]
            if close.size == 0:
                continue
            reachable = checker.segments_free(
                tuple(tree.pos[node]), tree.pos[close], cost=tree.cost[node]
            )
            free = close[reachable]
            if free.size:
                d = np.hypot(*(tree.pos[free] - tree.pos[node]).T)
                _attach(tree, int(free[np.argmin(d)]), node)
                break
        else:
            raise RepairFailedError(
                f"Severed solution not reconnected within {iteration_budget} iterations"
            )

    if tree.update_solution() is None:
        raise RepairFailedError("Repair finished without a root to goal path")
    logger.debug(
        f"Tree repaired by {'Reconnect' if reconnected else 'Regrow'} "
        f"after {iterations} grow iterations"
    )
    route = route_from_points(
        tree.path_points(tree.solution_path), origin, goal, env, template=template
    )
    return RepairOutcome(
        tree=tree, route=route, env=env, reconnected=reconnected, iterations=iterations
    )


# --------------------------------------------------
def sever_and_repair(
    tree: PlanTree,
    conflict: Conflict,
    env: Environment,
    step: float,
    origin: LocalPoint,
    goal: LocalPoint,
    template: Optional[Route] = None,
    iteration_budget: int = DEFAULT_REPAIR_BUDGET,
    goal_bias: float = DEFAULT_GOAL_BIAS,
) -> RepairOutcome:
    """Turns the conflicting foreign OV into a static obstacle and repairs."""
    if not conflict.obstacle:
        raise RepairFailedError("Conflict carries no obstacle footprint")
    logger.info(
        f"Severing route at segment {conflict.segment_index}: "
        f"{conflict.route_id} OV {conflict.ov_index} p={conflict.probability:.3f}"
    )
    return repair_with_obstacle(
        tree,
        conflict.obstacle,
        env,
        step,
        origin,
        goal,
        template=template,
        iteration_budget=iteration_budget,
        goal_bias=goal_bias,
    )
