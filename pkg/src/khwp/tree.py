"""Optimal tree solvers: the single-agent spanning walk of length
2(n-1) - diam, and the k-agent restricted walk driven by head/tail
mechanics whose length meets the (n-k) + sum d_P*(e) lower bound.

Tie-breaking is deterministic throughout: the diameter path comes from
the double BFS sweep in graphs.tree_diameter, and whenever several
unexplored off-path neighbours (or equally-near candidates) exist the
smallest vertex id wins.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .errors import GraphFormatError, InvariantViolationError, NotATreeError
from .graphs import Graph, tree_diameter
from .walks import TransitionWalk


def one_hwp_tree(tree: Graph) -> list[int]:
    """Single-agent spanning walk from one diameter endpoint to the other.

    The agent explores off-path neighbours before on-path ones (smallest
    id first) and backtracks to its parent when stuck, so every edge off
    the diameter path is crossed twice and every path edge once: total
    length 2(n-1) - diam.
    """
    if not tree.is_tree():
        raise NotATreeError("one_hwp_tree needs a tree")
    _, pstar = tree_diameter(tree)
    on_path = set(pstar)
    start, goal = pstar[0], pstar[-1]
    explored = [False] * tree.n
    parent = [-1] * tree.n
    explored[start] = True
    walk = [start]
    v = start
    while v != goal:
        off = sorted(u for u in tree.adj[v] if not explored[u] and u not in on_path)
        if off:
            nxt = off[0]
        else:
            on = sorted(u for u in tree.adj[v] if not explored[u] and u in on_path)
            if on:
                nxt = on[0]
            else:
                nxt = parent[v]
                if nxt < 0:
                    raise InvariantViolationError("backtrack from the start vertex")
                walk.append(nxt)
                v = nxt
                continue
        explored[nxt] = True
        parent[nxt] = v
        walk.append(nxt)
        v = nxt
    return walk


@dataclass
class StepTrace:
    """Per-transition debug record emitted when tracing is enabled."""

    head: int
    tail: int
    target: int
    config: tuple[int, ...]


def _deployment(tree: Graph, k: int) -> tuple[list[int], list[int], list[int], set[int]]:
    """Initial agent placement: the first k vertices explored by the
    single-agent walk, plus that walk's parent pointers and path."""
    walk = one_hwp_tree(tree)
    order: list[int] = []
    seen: set[int] = set()
    parent = [-1] * tree.n
    prev = None
    for v in walk:
        if v not in seen:
            seen.add(v)
            order.append(v)
            if prev is not None:
                parent[v] = prev
        prev = v
    _, pstar = tree_diameter(tree)
    return order[:k], parent, pstar, set(order[:k])


def k_rhwp_tree(
    tree: Graph, k: int, trace: bool = False
) -> TransitionWalk | tuple[TransitionWalk, list[StepTrace]]:
    """Spanning k-agent walk on a tree using only 1-transitions, of length
    exactly (n-k) + sum of the diameter-path edge indicators.

    One agent (the head) explores; the others shift along the head-tail
    path or hold still.  When the head runs out of unexplored neighbours
    the head role moves to the nearest occupied vertex that still has
    one; when nothing occupied does, the occupied vertex nearest the
    diameter path backtracks to its parent.  The tail is re-seated on a
    leaf of the occupied subtree whenever moving it would disconnect the
    configuration.
    """
    if not tree.is_tree():
        raise NotATreeError("k_rhwp_tree needs a tree")
    if not 1 <= k <= tree.n:
        raise GraphFormatError(f"k={k} out of range for n={tree.n}")
    if k == 1:
        walk = one_hwp_tree(tree)
        tw = TransitionWalk(k=1, configs=[(v,) for v in walk], host=tree)
        return (tw, []) if trace else tw

    deployment, parent, pstar, explored_set = _deployment(tree, k)
    on_path = set(pstar)
    goal = pstar[-1]
    explored = [False] * tree.n
    for v in explored_set:
        explored[v] = True
    dist_to_pstar = _multi_source_distances(tree, on_path)

    pos: list[int] = list(deployment)  # slot i = agent i
    head = deployment[-1]
    tail = deployment[0]
    configs: list[tuple[int, ...]] = [tuple(pos)]
    traces: list[StepTrace] = []

    while head != goal:
        occupied = set(pos)

        target = _pick_target(tree, head, explored, on_path)
        if target is None:
            candidate = _nearest_with_unexplored(tree, head, occupied, explored)
            if candidate is not None:
                tail, head = head, candidate
                target = _pick_target(tree, head, explored, on_path)
                assert target is not None
            else:
                nearest = min(occupied, key=lambda v: (dist_to_pstar[v], v))
                if nearest != head:
                    tail, head = head, nearest
                target = parent[head]
                if target < 0:
                    raise InvariantViolationError("backtrack requested at the walk origin")

        tail = _reseat_tail(tree, occupied, head, tail, dist_to_pstar)
        path = _occupied_path(tree, occupied, head, tail)

        # agents on the head-tail path shift one step toward the head
        step = {path[i]: path[i - 1] for i in range(1, len(path))}
        step[head] = target
        pos = [step.get(v, v) for v in pos]
        if len(set(pos)) != k:
            raise InvariantViolationError("agents collided during a shift")
        explored[target] = True
        head = target
        tail = path[-2]
        configs.append(tuple(pos))
        if trace:
            traces.append(StepTrace(head=head, tail=tail, target=target, config=tuple(pos)))

    tw = TransitionWalk(k=k, configs=configs, host=tree)
    return (tw, traces) if trace else tw


def _pick_target(tree: Graph, head: int, explored: list[bool], on_path: set[int]) -> int | None:
    """Head's next move: unexplored off-path neighbour first (smallest id),
    then the unexplored on-path neighbour; None when all are explored."""
    off = [u for u in tree.adj[head] if not explored[u] and u not in on_path]
    if off:
        return min(off)
    on = [u for u in tree.adj[head] if not explored[u] and u in on_path]
    if on:
        return min(on)
    return None


def _nearest_with_unexplored(
    tree: Graph, head: int, occupied: set[int], explored: list[bool]
) -> int | None:
    """Occupied vertex nearest to the head (within the occupied subtree)
    that still has an unexplored neighbour; ties by smallest id."""
    best: tuple[int, int] | None = None
    dist = {head: 0}
    queue = deque([head])
    while queue:
        v = queue.popleft()
        if v != head and any(not explored[u] for u in tree.adj[v]):
            key = (dist[v], v)
            if best is None or key < best:
                best = key
        for u in tree.adj[v] & occupied:
            if u not in dist:
                dist[u] = dist[v] + 1
                queue.append(u)
    return None if best is None else best[1]


def _reseat_tail(
    tree: Graph, occupied: set[int], head: int, tail: int, dist_to_pstar: list[int]
) -> int:
    """Move the tail designation to a leaf of the occupied subtree when the
    current tail is interior.  Among non-head leaves, prefer one other
    than the leaf nearest the diameter path, smallest id first."""
    degree = {v: len(tree.adj[v] & occupied) for v in occupied}
    if degree[tail] <= 1 and tail != head:
        return tail
    leaves = [v for v in occupied if degree[v] <= 1 and v != head]
    if not leaves:
        raise InvariantViolationError("occupied subtree has no non-head leaf")
    nearest = min(leaves, key=lambda v: (dist_to_pstar[v], v))
    others = sorted(v for v in leaves if v != nearest)
    return others[0] if others else nearest


def _occupied_path(tree: Graph, occupied: set[int], head: int, tail: int) -> list[int]:
    """Unique path from head to tail inside the occupied subtree."""
    prev = {head: head}
    queue = deque([head])
    while queue:
        v = queue.popleft()
        if v == tail:
            break
        for u in tree.adj[v] & occupied:
            if u not in prev:
                prev[u] = v
                queue.append(u)
    if tail not in prev:
        raise InvariantViolationError("head and tail are not connected through occupied vertices")
    path = [tail]
    while path[-1] != head:
        path.append(prev[path[-1]])
    path.reverse()
    return path


def _multi_source_distances(g: Graph, sources: set[int]) -> list[int]:
    dist = [-1] * g.n
    queue = deque()
    for s in sources:
        dist[s] = 0
        queue.append(s)
    while queue:
        v = queue.popleft()
        for u in g.adj[v]:
            if dist[u] < 0:
                dist[u] = dist[v] + 1
                queue.append(u)
    return dist
