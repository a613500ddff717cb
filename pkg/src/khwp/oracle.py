"""Exhaustive oracles for small instances.

exact_hk runs a multi-source BFS over (configuration, covered-vertex-set)
states and returns the true optimum walk length with a witness.  The
state drops agent identity: a sorted vertex set reaches exactly the same
successor sets as any slot permutation of it, so canonicalizing is a pure
symmetry reduction.  Successor sets are tested with a bipartite perfect
matching (slot s may map to s' iff s == s' or (s, s') is an edge).

Also here: brute-force optima for weighted set packing, minimum connected
set cover, spanning hyperedge walks on an augmented line graph, and
metric Hamiltonian paths (Held-Karp).  All refuse above their caps.
"""

from __future__ import annotations

from collections import deque
from itertools import combinations

from .config import Caps, DEFAULT_CAPS
from .errors import CapExceededError, GraphFormatError, InfeasibleError
from .graphs import Graph, enumerate_connected_ksubsets
from .walks import TransitionWalk


def _has_perfect_matching(left: tuple[int, ...], right: tuple[int, ...], g: Graph) -> bool:
    """Stay-or-move matching between two vertex sets of equal size."""
    k = len(left)
    allowed = [
        [l == r or g.has_edge(l, r) for r in right]
        for l in left
    ]
    match_of_right = [-1] * k

    def augment(i: int, visited: list[bool]) -> bool:
        for j in range(k):
            if allowed[i][j] and not visited[j]:
                visited[j] = True
                if match_of_right[j] < 0 or augment(match_of_right[j], visited):
                    match_of_right[j] = i
                    return True
        return False

    for i in range(k):
        if not augment(i, [False] * k):
            return False
    return True


def _matching_assignment(left: tuple[int, ...], right_set: frozenset[int], g: Graph) -> tuple[int, ...] | None:
    """Per-slot assignment of ``left`` onto ``right_set`` respecting
    stay-or-move; returns the ordered successor tuple or None."""
    right = tuple(sorted(right_set))
    k = len(left)
    allowed = [
        [l == r or g.has_edge(l, r) for r in right]
        for l in left
    ]
    match_of_right = [-1] * k

    def augment(i: int, visited: list[bool]) -> bool:
        for j in range(k):
            if allowed[i][j] and not visited[j]:
                visited[j] = True
                if match_of_right[j] < 0 or augment(match_of_right[j], visited):
                    match_of_right[j] = i
                    return True
        return False

    for i in range(k):
        if not augment(i, [False] * k):
            return None
    slot_target = [-1] * k
    for j, i in enumerate(match_of_right):
        slot_target[i] = right[j]
    return tuple(slot_target)


class _ConfigSpace:
    """Connected k-subsets of a graph with precomputed successor lists."""

    def __init__(self, g: Graph, k: int, restricted: bool):
        self.g = g
        self.k = k
        self.restricted = restricted
        self.configs: list[frozenset[int]] = enumerate_connected_ksubsets(g, k)
        self.index: dict[frozenset[int], int] = {c: i for i, c in enumerate(self.configs)}
        self.bits: list[int] = [sum(1 << v for v in c) for c in self.configs]
        self._succ: list[list[int] | None] = [None] * len(self.configs)

    def successors(self, ci: int) -> list[int]:
        cached = self._succ[ci]
        if cached is not None:
            return cached
        s = self.configs[ci]
        left = tuple(sorted(s))
        out: list[int] = []
        if self.restricted:
            # exactly one new vertex: S' = S - x + y
            for x in s:
                base = s - {x}
                neighbours: set[int] = set()
                for v in s:
                    neighbours |= self.g.adj[v]
                for y in neighbours - s:
                    target = base | {y}
                    ti = self.index.get(target)
                    if ti is not None and ti != ci and _has_perfect_matching(left, tuple(sorted(target)), self.g):
                        out.append(ti)
        else:
            for ti, target in enumerate(self.configs):
                if ti == ci or target == s:
                    continue
                if _has_perfect_matching(left, tuple(sorted(target)), self.g):
                    out.append(ti)
        out = sorted(set(out))
        self._succ[ci] = out
        return out


def exact_hk(
    g: Graph,
    k: int,
    restricted: bool = False,
    caps: Caps = DEFAULT_CAPS,
) -> tuple[int, TransitionWalk]:
    """Exact optimum length of a spanning configuration walk, with witness.

    restricted=True admits only transitions introducing exactly one new
    vertex.  Refuses when n or k exceed the configured caps.
    """
    if g.n > caps.oracle_max_n:
        raise CapExceededError(f"oracle cap: n={g.n} > {caps.oracle_max_n}")
    if k > caps.oracle_max_k:
        raise CapExceededError(f"oracle cap: k={k} > {caps.oracle_max_k}")
    if not 1 <= k <= g.n:
        raise GraphFormatError(f"k={k} out of range for n={g.n}")

    space = _ConfigSpace(g, k, restricted)
    full = (1 << g.n) - 1
    shift = g.n
    # state key = (config index << n) | covered mask
    parents: dict[int, int] = {}
    queue: deque[int] = deque()
    goal_state = -1
    for ci, bits in enumerate(space.bits):
        state = (ci << shift) | bits
        if state not in parents:
            parents[state] = -1
            if bits == full:
                goal_state = state
                break
            queue.append(state)

    while goal_state < 0 and queue:
        state = queue.popleft()
        ci = state >> shift
        mask = state & full
        for ti in space.successors(ci):
            nxt = (ti << shift) | (mask | space.bits[ti])
            if nxt not in parents:
                parents[nxt] = state
                if (nxt & full) == full:
                    goal_state = nxt
                    queue.clear()
                    break
                queue.append(nxt)

    if goal_state < 0:
        raise InfeasibleError(f"no spanning walk with k={k}")

    # reconstruct the set sequence, then thread slot orderings through it
    states = [goal_state]
    while parents[states[-1]] != -1:
        states.append(parents[states[-1]])
    states.reverse()
    sets = [space.configs[s >> shift] for s in states]
    ordered: list[tuple[int, ...]] = [tuple(sorted(sets[0]))]
    for nxt in sets[1:]:
        assignment = _matching_assignment(ordered[-1], nxt, g)
        assert assignment is not None, "BFS emitted a non-adjacent pair"
        ordered.append(assignment)
    walk = TransitionWalk(k=k, configs=ordered, host=g)
    return len(ordered) - 1, walk


# -- weighted set packing ---------------------------------------------------


def exact_set_packing(
    weights: list[int],
    members: list[frozenset],
    caps: Caps = DEFAULT_CAPS,
) -> tuple[int, list[int]]:
    """Maximum-weight pairwise-disjoint subfamily by branch and bound.

    Sets are indexed positionally; returns (best weight, chosen indices).
    """
    if len(weights) != len(members):
        raise GraphFormatError("weights and members length mismatch")
    if len(members) > caps.packing_max_sets:
        raise CapExceededError(f"packing cap: {len(members)} sets > {caps.packing_max_sets}")
    order = sorted(range(len(members)), key=lambda i: (-weights[i], i))
    suffix = [0] * (len(order) + 1)
    for pos in range(len(order) - 1, -1, -1):
        suffix[pos] = suffix[pos + 1] + weights[order[pos]]

    best_weight = 0
    best_chosen: list[int] = []

    def search(start: int, used: frozenset, weight: int, chosen: list[int]) -> None:
        # recursion depth equals the family size, not the set count
        nonlocal best_weight, best_chosen
        if weight > best_weight:
            best_weight = weight
            best_chosen = list(chosen)
        for pos in range(start, len(order)):
            if weight + suffix[pos] <= best_weight:
                break
            idx = order[pos]
            if not (members[idx] & used):
                chosen.append(idx)
                search(pos + 1, used | members[idx], weight + weights[idx], chosen)
                chosen.pop()

    search(0, frozenset(), 0, [])
    return best_weight, sorted(best_chosen)


# -- minimum connected set cover --------------------------------------------


def exact_connected_set_cover(
    universe_size: int,
    family: list[frozenset[int]],
    host_adj: list[set[int]],
    caps: Caps = DEFAULT_CAPS,
) -> list[int]:
    """Smallest covering subfamily inducing a connected host subgraph.

    The host is given as an adjacency list over family indices.  Searches
    cardinality 1, 2, ... and returns the first feasible subfamily (ties
    broken by lexicographic index order).
    """
    if len(family) > caps.csc_max_sets:
        raise CapExceededError(f"connected-cover cap: {len(family)} sets > {caps.csc_max_sets}")
    universe = frozenset(range(universe_size))
    covered_all: set[int] = set()
    for s in family:
        covered_all |= s
    if not universe <= covered_all:
        raise InfeasibleError("family does not cover the universe")

    def connected(indices: tuple[int, ...]) -> bool:
        chosen = set(indices)
        start = indices[0]
        seen = {start}
        queue = deque([start])
        while queue:
            i = queue.popleft()
            for j in host_adj[i] & chosen:
                if j not in seen:
                    seen.add(j)
                    queue.append(j)
        return len(seen) == len(chosen)

    for size in range(1, len(family) + 1):
        for indices in combinations(range(len(family)), size):
            cover: set[int] = set()
            for i in indices:
                cover |= family[i]
            if universe <= cover and connected(indices):
                return list(indices)
    raise InfeasibleError("no connected cover exists")


# -- spanning hyperedge walks -----------------------------------------------


def exact_hyperedge_walk(
    n: int,
    hyperedges: list[frozenset[int]],
    adjacency: list[set[int]],
    caps: Caps = DEFAULT_CAPS,
) -> tuple[int, list[int]]:
    """Shortest spanning walk over hyperedges connected by the given
    adjacency (the augmented line graph).  Returns (length, edge ids)."""
    if n > caps.oracle_max_n or len(hyperedges) > caps.csc_max_sets:
        raise CapExceededError("hyperedge walk oracle cap exceeded")
    full = (1 << n) - 1
    bits = [sum(1 << v for v in e) for e in hyperedges]
    parents: dict[tuple[int, int], tuple[int, int] | None] = {}
    queue: deque[tuple[int, int]] = deque()
    goal = None
    for eid, b in enumerate(bits):
        state = (eid, b)
        if state not in parents:
            parents[state] = None
            if b == full:
                goal = state
                break
            queue.append(state)
    while goal is None and queue:
        state = queue.popleft()
        eid, mask = state
        for nxt_eid in adjacency[eid]:
            nxt = (nxt_eid, mask | bits[nxt_eid])
            if nxt not in parents:
                parents[nxt] = state
                if nxt[1] == full:
                    goal = nxt
                    queue.clear()
                    break
                queue.append(nxt)
    if goal is None:
        raise InfeasibleError("no spanning hyperedge walk")
    seq = [goal]
    while parents[seq[-1]] is not None:
        seq.append(parents[seq[-1]])
    seq.reverse()
    ids = [s[0] for s in seq]
    return len(ids) - 1, ids


# -- metric Hamiltonian path --------------------------------------------------


def exact_hamiltonian_path(dist: list[list[float]]) -> tuple[float, list[int]]:
    """Minimum-cost Hamiltonian path over a full distance matrix
    (Held-Karp over subsets; intended for n <= 12)."""
    n = len(dist)
    if n > 14:
        raise CapExceededError(f"Hamiltonian path oracle limited to n <= 14, got {n}")
    if n == 1:
        return 0.0, [0]
    size = 1 << n
    INF = float("inf")
    best = [[INF] * n for _ in range(size)]
    back: list[list[int]] = [[-1] * n for _ in range(size)]
    for v in range(n):
        best[1 << v][v] = 0.0
    for mask in range(size):
        row = best[mask]
        for last in range(n):
            cost = row[last]
            if cost == INF:
                continue
            for nxt in range(n):
                if mask & (1 << nxt):
                    continue
                nmask = mask | (1 << nxt)
                ncost = cost + dist[last][nxt]
                if ncost < best[nmask][nxt]:
                    best[nmask][nxt] = ncost
                    back[nmask][nxt] = last
    full = size - 1
    end = min(range(n), key=lambda v: best[full][v])
    order = [end]
    mask = full
    while back[mask][order[-1]] != -1:
        prev = back[mask][order[-1]]
        mask ^= 1 << order[-1]
        order.append(prev)
    order.reverse()
    return best[full][end], order
