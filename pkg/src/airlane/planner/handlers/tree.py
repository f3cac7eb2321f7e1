__all__ = ["PlanTree", "grow", "force_remove", "DEFAULT_GOAL_BIAS", "NEIGHBOR_FACTOR"]

from collections import deque
from typing import List, Optional, Tuple

import numpy as np

from ...utils import make_rng
from ..schemas import Environment
from .collision import CollisionChecker

DEFAULT_GOAL_BIAS = 0.05
NEIGHBOR_FACTOR = 2.0
_EPS = 1e-9


# --------------------------------------------------
class PlanTree:
    """Fixed-node RRT* tree in the local plane.

    Node slots are reused after removal so arrays stay near ``max_nodes``.
    Node 0 is the root. ``attached`` is False for nodes cut off from the
    root during a repair (their subtree waits for Reconnect or Regrow).
    """

    # --------------------------------------------------
    def __init__(self, root: Tuple[float, float], max_nodes: int, seed: int = 0):
        if max_nodes < 2:
            raise ValueError("A plan tree needs room for at least two nodes")
        self.max_nodes = int(max_nodes)
        self.rng_seed = int(seed)
        self.rng = make_rng(seed, "plan-tree")
        capacity = self.max_nodes + 2
        self.pos = np.zeros((capacity, 2))
        self.parent = np.full(capacity, -1, dtype=int)
        self.cost = np.zeros(capacity)
        self.alive = np.zeros(capacity, dtype=bool)
        self.attached = np.zeros(capacity, dtype=bool)
        self.n_children = np.zeros(capacity, dtype=int)
        self.goal_id: Optional[int] = None
        self.solution_path: Optional[List[int]] = None
        self.last_added: Optional[int] = None
        self.pos[0] = root
        self.alive[0] = True
        self.attached[0] = True

    # --------------------------------------------------
    @property
    def node_count(self) -> int:
        return int(self.alive.sum())

    # --------------------------------------------------
    def _free_slot(self) -> int:
        free = np.flatnonzero(~self.alive)
        if free.size:
            return int(free[0])
        old = self.pos.shape[0]
        grow_by = max(8, old // 2)
        self.pos = np.vstack([self.pos, np.zeros((grow_by, 2))])
        self.parent = np.concatenate([self.parent, np.full(grow_by, -1, dtype=int)])
        self.cost = np.concatenate([self.cost, np.zeros(grow_by)])
        self.alive = np.concatenate([self.alive, np.zeros(grow_by, dtype=bool)])
        self.attached = np.concatenate([self.attached, np.zeros(grow_by, dtype=bool)])
        self.n_children = np.concatenate(
            [self.n_children, np.zeros(grow_by, dtype=int)]
        )
        return old

    # --------------------------------------------------
    def add_node(self, p: Tuple[float, float], parent: int) -> int:
        i = self._free_slot()
        self.pos[i] = p
        self.parent[i] = parent
        self.cost[i] = self.cost[parent] + self.distance(parent, p)
        self.alive[i] = True
        self.attached[i] = bool(self.attached[parent])
        self.n_children[i] = 0
        self.n_children[parent] += 1
        self.last_added = i
        return i

    # --------------------------------------------------
    def remove_node(self, i: int) -> None:
        if i == 0:
            raise ValueError("The root cannot be removed")
        for child in self.children(i):
            self.parent[child] = -1
            self._mark_detached(child)
        p = self.parent[i]
        if p >= 0:
            self.n_children[p] -= 1
        self.alive[i] = False
        self.attached[i] = False
        self.parent[i] = -1
        self.n_children[i] = 0
        if self.goal_id == i:
            self.goal_id = None
            self.solution_path = None

    # --------------------------------------------------
    def distance(self, i: int, p: Tuple[float, float]) -> float:
        return float(np.hypot(p[0] - self.pos[i, 0], p[1] - self.pos[i, 1]))

    # --------------------------------------------------
    def nearest(self, p: Tuple[float, float], attached_only: bool = True) -> int:
        mask = self.alive & self.attached if attached_only else self.alive
        idx = np.flatnonzero(mask)
        d = np.hypot(self.pos[idx, 0] - p[0], self.pos[idx, 1] - p[1])
        return int(idx[np.argmin(d)])

    # --------------------------------------------------
    def near(
        self, p: Tuple[float, float], radius: float, attached_only: bool = True
    ) -> np.ndarray:
        mask = self.alive & self.attached if attached_only else self.alive
        idx = np.flatnonzero(mask)
        d = np.hypot(self.pos[idx, 0] - p[0], self.pos[idx, 1] - p[1])
        return idx[d <= radius]

    # --------------------------------------------------
    def children(self, i: int) -> np.ndarray:
        return np.flatnonzero(self.alive & (self.parent == i))

    # --------------------------------------------------
    def subtree(self, i: int) -> List[int]:
        out, queue = [], deque([i])
        while queue:
            node = queue.popleft()
            out.append(node)
            queue.extend(int(c) for c in self.children(node))
        return out

    # --------------------------------------------------
    def _mark_detached(self, i: int) -> None:
        for node in self.subtree(i):
            self.attached[node] = False

    # --------------------------------------------------
    def path_to_root(self, i: int) -> List[int]:
        path = [i]
        while self.parent[path[-1]] >= 0:
            path.append(int(self.parent[path[-1]]))
            if len(path) > self.pos.shape[0]:
                raise RuntimeError("Cycle in plan tree parent links")
        return path

    # --------------------------------------------------
    def propagate_cost(self, i: int) -> None:
        """Recomputes cost (and attachment) for the subtree under ``i``."""
        queue = deque([i])
        while queue:
            node = queue.popleft()
            for child in self.children(node):
                step = self.distance(node, self.pos[child])
                self.cost[child] = self.cost[node] + step
                self.attached[child] = self.attached[node]
                queue.append(int(child))

    # --------------------------------------------------
    def set_parent(self, i: int, new_parent: int) -> None:
        old = self.parent[i]
        if old >= 0:
            self.n_children[old] -= 1
        self.parent[i] = new_parent
        self.n_children[new_parent] += 1
        self.cost[i] = self.cost[new_parent] + self.distance(new_parent, self.pos[i])
        self.attached[i] = self.attached[new_parent]
        self.propagate_cost(i)

    # --------------------------------------------------
    def detach(self, i: int) -> None:
        old = self.parent[i]
        if old >= 0:
            self.n_children[old] -= 1
        self.parent[i] = -1
        self._mark_detached(i)

    # --------------------------------------------------
    def reroot(self, new_root: int) -> None:
        """Makes ``new_root`` the top of its detached subtree by reversing the
        parent links up to the current subtree top."""
        chain = self.path_to_root(new_root)
        for child, parent in zip(chain, chain[1:]):
            self.n_children[parent] -= 1
        for child, parent in reversed(list(zip(chain, chain[1:]))):
            self.parent[parent] = child
            self.n_children[child] += 1
        self.parent[new_root] = -1

    # --------------------------------------------------
    def update_solution(self) -> Optional[List[int]]:
        if self.goal_id is None or not self.attached[self.goal_id]:
            self.solution_path = None
        else:
            self.solution_path = list(reversed(self.path_to_root(self.goal_id)))
        return self.solution_path

    # --------------------------------------------------
    def removal_candidates(self, protected: Optional[int]) -> np.ndarray:
        eligible = self.alive & self.attached & (self.n_children == 0)
        eligible[0] = False
        if protected is not None:
            eligible[protected] = False
        if self.goal_id is not None:
            eligible[self.goal_id] = False
        if self.solution_path:
            eligible[self.solution_path] = False
        return np.flatnonzero(eligible)

    # --------------------------------------------------
    def edges(self) -> List[Tuple[int, int]]:
        return [
            (int(i), int(self.parent[i]))
            for i in np.flatnonzero(self.alive)
            if self.parent[i] >= 0
        ]

    # --------------------------------------------------
    def path_points(self, ids: List[int]) -> List[Tuple[float, float]]:
        return [(float(self.pos[i, 0]), float(self.pos[i, 1])) for i in ids]


# --------------------------------------------------
def force_remove(tree: PlanTree, protected: Optional[int] = None) -> Optional[int]:
    """Removes one uniformly chosen childless node.

    The root, ``protected`` (by default the node added last), the goal and
    the solution path are never chosen. Returns the removed id, or None
    when nothing is eligible.
    """
    if protected is None:
        protected = tree.last_added
    candidates = tree.removal_candidates(protected)
    if candidates.size == 0:
        return None
    victim = int(candidates[tree.rng.integers(candidates.size)])
    tree.remove_node(victim)
    return victim


# --------------------------------------------------
def _steer(
    origin: np.ndarray, target: Tuple[float, float], step: float
) -> Tuple[float, float]:
    d = np.hypot(target[0] - origin[0], target[1] - origin[1])
    if d <= step:
        return (float(target[0]), float(target[1]))
    f = step / d
    return (
        float(origin[0] + f * (target[0] - origin[0])),
        float(origin[1] + f * (target[1] - origin[1])),
    )


# --------------------------------------------------
def grow(
    tree: PlanTree,
    env: Environment,
    step: float,
    goal: Tuple[float, float],
    goal_bias: float = DEFAULT_GOAL_BIAS,
    checker: Optional[CollisionChecker] = None,
) -> Optional[int]:
    """One RRT* extension with fixed-node saturation.

    Returns the id of the node added, or None when the sample was rejected.
    """
    if step <= 0:
        raise ValueError("Step size must be positive")
    checker = checker or CollisionChecker(env)
    xmin, ymin, xmax, ymax = env.bounds
    if tree.rng.random() < goal_bias:
        sample = (float(goal[0]), float(goal[1]))
    else:
        sample = (
            float(tree.rng.uniform(xmin, xmax)),
            float(tree.rng.uniform(ymin, ymax)),
        )
    nearest = tree.nearest(sample)
    new = _steer(tree.pos[nearest], sample, step)
    if not checker.point_free(*new):
        return None

    saturated = tree.node_count >= tree.max_nodes
    # The chosen parent may lose its childless status, keep a spare.
    if saturated and tree.removal_candidates(None).size < 2:
        return None

    radius = NEIGHBOR_FACTOR * step
    neighbors = np.union1d(tree.near(new, radius), [nearest]).astype(int)
    reachable = checker.segments_free(
        new, tree.pos[neighbors], cost=tree.cost[neighbors]
    )
    neighbors = neighbors[reachable]
    if neighbors.size == 0:
        return None
    via = tree.cost[neighbors] + np.hypot(
        tree.pos[neighbors, 0] - new[0], tree.pos[neighbors, 1] - new[1]
    )
    parent = int(neighbors[np.argmin(via)])
    node = tree.add_node(new, parent)

    # Rewire neighbours through the new node when it shortens their path.
    for nb in neighbors:
        nb = int(nb)
        if nb in (0, parent):
            continue
        through = tree.cost[node] + tree.distance(node, tree.pos[nb])
        if through < tree.cost[nb] - _EPS and (
            not checker.has_dynamic
            or checker.segment_free(new, tuple(tree.pos[nb]), cost=tree.cost[node])
        ):
            tree.set_parent(nb, node)

    if tree.goal_id is None and new[0] == goal[0] and new[1] == goal[1]:
        tree.goal_id = node
    tree.update_solution()

    if tree.node_count > tree.max_nodes:
        force_remove(tree, protected=node)
    return node
