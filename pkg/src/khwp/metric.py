"""Minimum-weight Hamiltonian path heuristic on metric instances
(Hoogeveen's path variant of Christofides): minimum spanning tree, then a
minimum-weight matching on all but two odd-degree vertices, then an Euler
path shortcut to a Hamiltonian order.

The matching subproblem is solved exactly by a subset DP up to the
configured odd-vertex cap; above it a greedy nearest-pair fallback runs
and flags the result as heuristic.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

from .config import Caps, DEFAULT_CAPS
from .errors import GraphFormatError, InvariantViolationError


@dataclass(frozen=True)
class MetricInstance:
    """Symmetric non-negative distances with zero diagonal satisfying the
    triangle inequality (validated on construction)."""

    dist: tuple[tuple[float, ...], ...]

    @property
    def points(self) -> int:
        return len(self.dist)

    @staticmethod
    def from_matrix(matrix) -> "MetricInstance":
        n = len(matrix)
        for row in matrix:
            if len(row) != n:
                raise GraphFormatError("distance matrix must be square")
        for i in range(n):
            if matrix[i][i] != 0:
                raise GraphFormatError(f"nonzero diagonal at {i}")
            for j in range(n):
                if matrix[i][j] != matrix[j][i]:
                    raise GraphFormatError(f"asymmetric distances at ({i}, {j})")
                if matrix[i][j] < 0:
                    raise GraphFormatError(f"negative distance at ({i}, {j})")
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    if matrix[i][j] > matrix[i][k] + matrix[k][j] + 1e-9:
                        raise GraphFormatError(
                            f"triangle inequality violated: d({i},{j}) > d({i},{k}) + d({k},{j})"
                        )
        return MetricInstance(tuple(tuple(float(x) for x in row) for row in matrix))


def metric_closure(matrix) -> list[list[float]]:
    """Floyd-Warshall closure of an arbitrary symmetric weight matrix;
    never increases a weight and restores the triangle inequality."""
    n = len(matrix)
    dist = [[float(matrix[i][j]) for j in range(n)] for i in range(n)]
    for k in range(n):
        dk = dist[k]
        for i in range(n):
            dik = dist[i][k]
            row = dist[i]
            for j in range(n):
                alt = dik + dk[j]
                if alt < row[j]:
                    row[j] = alt
    return dist


def mst(inst: MetricInstance) -> tuple[list[tuple[int, int]], float]:
    """Prim's minimum spanning tree; returns (edges, total cost)."""
    n = inst.points
    if n == 0:
        raise GraphFormatError("empty instance")
    if n == 1:
        return [], 0.0
    in_tree = [False] * n
    in_tree[0] = True
    heap: list[tuple[float, int, int]] = []
    for v in range(1, n):
        heapq.heappush(heap, (inst.dist[0][v], 0, v))
    edges: list[tuple[int, int]] = []
    cost = 0.0
    while heap and len(edges) < n - 1:
        w, u, v = heapq.heappop(heap)
        if in_tree[v]:
            continue
        in_tree[v] = True
        edges.append((u, v))
        cost += w
        for x in range(n):
            if not in_tree[x]:
                heapq.heappush(heap, (inst.dist[v][x], v, x))
    return edges, cost


@dataclass
class MatchingResult:
    pairs: list[tuple[int, int]]
    excluded: tuple[int, int]
    cost: float
    heuristic: bool


def min_matching_except_two(
    inst: MetricInstance, odd: list[int], caps: Caps = DEFAULT_CAPS
) -> MatchingResult:
    """Minimum-cost perfect matching on the odd set minus two vertices,
    minimized jointly over the excluded pair.

    Exact subset DP for |odd| <= matching cap; greedy nearest-pair above
    it with ``heuristic=True`` in the result.
    """
    if len(odd) % 2 != 0 or len(odd) < 2:
        raise InvariantViolationError(f"odd-degree set must be even and >= 2, got {len(odd)}")
    if len(odd) == 2:
        return MatchingResult(pairs=[], excluded=(odd[0], odd[1]), cost=0.0, heuristic=False)
    if len(odd) > caps.matching_max_odd:
        return _greedy_matching_except_two(inst, odd)

    o = len(odd)
    full = (1 << o) - 1
    INF = float("inf")
    # best[mask] = cheapest perfect matching of exactly the vertices in mask
    best = [INF] * (1 << o)
    choice: list[tuple[int, int] | None] = [None] * (1 << o)
    best[0] = 0.0
    for mask in range(1, 1 << o):
        if bin(mask).count("1") % 2 == 1:
            continue
        i = (mask & -mask).bit_length() - 1
        rest = mask & ~(1 << i)
        j_bits = rest
        while j_bits:
            j = (j_bits & -j_bits).bit_length() - 1
            j_bits &= j_bits - 1
            sub = rest & ~(1 << j)
            if best[sub] == INF:
                continue
            cost = best[sub] + inst.dist[odd[i]][odd[j]]
            if cost < best[mask]:
                best[mask] = cost
                choice[mask] = (i, j)

    best_cost = INF
    best_excluded = (0, 1)
    for a in range(o):
        for b in range(a + 1, o):
            mask = full & ~(1 << a) & ~(1 << b)
            if best[mask] < best_cost:
                best_cost = best[mask]
                best_excluded = (a, b)
    pairs: list[tuple[int, int]] = []
    mask = full & ~(1 << best_excluded[0]) & ~(1 << best_excluded[1])
    while mask:
        pair = choice[mask]
        assert pair is not None
        i, j = pair
        pairs.append((odd[i], odd[j]))
        mask &= ~(1 << i) & ~(1 << j)
    return MatchingResult(
        pairs=pairs,
        excluded=(odd[best_excluded[0]], odd[best_excluded[1]]),
        cost=best_cost,
        heuristic=False,
    )


def _greedy_matching_except_two(inst: MetricInstance, odd: list[int]) -> MatchingResult:
    remaining = list(odd)
    pairs: list[tuple[int, int]] = []
    cost = 0.0
    while len(remaining) > 2:
        best = None
        for i in range(len(remaining)):
            for j in range(i + 1, len(remaining)):
                d = inst.dist[remaining[i]][remaining[j]]
                if best is None or d < best[0]:
                    best = (d, i, j)
        assert best is not None
        d, i, j = best
        pairs.append((remaining[i], remaining[j]))
        cost += d
        remaining = [v for idx, v in enumerate(remaining) if idx not in (i, j)]
    return MatchingResult(pairs=pairs, excluded=(remaining[0], remaining[1]), cost=cost, heuristic=True)


def euler_path(n: int, edges: list[tuple[int, int]]) -> list[int]:
    """Edge-disjoint traversal of a connected multigraph with 0 or 2
    odd-degree vertices (Hierholzer); starts at the smallest odd vertex
    when the degree sequence has one."""
    if not edges:
        raise GraphFormatError("euler_path needs at least one edge")
    incidence: list[list[int]] = [[] for _ in range(n)]
    for eid, (u, v) in enumerate(edges):
        incidence[u].append(eid)
        incidence[v].append(eid)
    touched = [v for v in range(n) if incidence[v]]
    odd = [v for v in touched if len(incidence[v]) % 2 == 1]
    if len(odd) not in (0, 2):
        raise GraphFormatError(f"{len(odd)} odd-degree vertices; Euler path needs 0 or 2")
    start = min(odd) if odd else min(touched)

    used = [False] * len(edges)
    pointer = [0] * n
    stack = [start]
    out: list[int] = []
    while stack:
        v = stack[-1]
        advanced = False
        while pointer[v] < len(incidence[v]):
            eid = incidence[v][pointer[v]]
            if used[eid]:
                pointer[v] += 1
                continue
            used[eid] = True
            a, b = edges[eid]
            stack.append(b if a == v else a)
            advanced = True
            break
        if not advanced:
            out.append(stack.pop())
    out.reverse()
    if len(out) != len(edges) + 1:
        raise GraphFormatError("multigraph is not connected on its edge support")
    return out


def shortcut(order_with_repeats: list[int]) -> list[int]:
    """Keep first occurrences in traversal order (triangle inequality makes
    this never more expensive)."""
    seen: set[int] = set()
    out: list[int] = []
    for v in order_with_repeats:
        if v not in seen:
            seen.add(v)
            out.append(v)
    return out


@dataclass
class HamiltonianPathResult:
    order: list[int]
    cost: float
    mst_cost: float
    matching: MatchingResult | None


def metric_hamiltonian_path(inst: MetricInstance, caps: Caps = DEFAULT_CAPS) -> HamiltonianPathResult:
    """MST + matching-except-two + Euler path + shortcut."""
    n = inst.points
    if n == 1:
        return HamiltonianPathResult(order=[0], cost=0.0, mst_cost=0.0, matching=None)
    tree_edges, tree_cost = mst(inst)
    degree = [0] * n
    for u, v in tree_edges:
        degree[u] += 1
        degree[v] += 1
    odd = [v for v in range(n) if degree[v] % 2 == 1]
    matching: MatchingResult | None = None
    multi = list(tree_edges)
    if len(odd) > 2:
        matching = min_matching_except_two(inst, odd, caps)
        multi.extend(matching.pairs)
    euler = euler_path(n, multi)
    order = shortcut(euler)
    if len(order) != n:
        raise InvariantViolationError("shortcut path missed a point")
    cost = sum(inst.dist[order[i]][order[i + 1]] for i in range(n - 1))
    return HamiltonianPathResult(order=order, cost=cost, mst_cost=tree_cost, matching=matching)
