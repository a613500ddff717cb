"""k-agent walks on k-uniform hypergraphs and the constant-k adaptation
for simple graphs.

The hypergraph walk moves all agents between hyperedges: a shift targets
any intersecting hyperedge, a jump targets one reachable by a
simultaneous per-agent move (every agent crosses a co-membership pair).
Both live in the augmented line graph; the solver reduces spanning walks
to minimum connected set cover over it, covers greedily, and doubles the
cover's connecting subtree into an Euler traversal.

For simple graphs the family becomes the connected k-subsets and a host
edge requires an actual one-step transition (a stay-or-move matching over
closed neighbourhoods); raw intersection alone is not enough there, since
agents move one edge at a time.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .config import Caps, DEFAULT_CAPS
from .errors import GraphFormatError, InfeasibleError, InvariantViolationError
from .graphs import Graph, Hypergraph, enumerate_connected_ksubsets
from .oracle import _matching_assignment
from .walks import TransitionWalk


@dataclass
class AugmentedLineGraph:
    """Line graph of a hypergraph plus jump edges; labels record which
    relation produced each adjacency (intersecting pairs stay 'shift')."""

    hypergraph: Hypergraph
    adjacency: list[set[int]]
    labels: dict[tuple[int, int], str] = field(default_factory=dict)

    def jump_edges(self) -> list[tuple[int, int]]:
        return sorted(pair for pair, label in self.labels.items() if label == "jump")

    def shift_edges(self) -> list[tuple[int, int]]:
        return sorted(pair for pair, label in self.labels.items() if label == "shift")


def _hyper_jump_possible(h: Hypergraph, e_from: frozenset[int], e_to: frozenset[int]) -> bool:
    """Perfect matching pairing each v in e_from with a distinct u in e_to
    such that v and u share some hyperedge (open neighbourhoods: agents
    may not stand still during a hypergraph jump)."""
    left = sorted(e_from)
    right = sorted(e_to)
    k = len(left)
    neighbourhoods = {v: h.neighbourhood(v) for v in left}
    allowed = [[right[j] in neighbourhoods[left[i]] for j in range(k)] for i in range(k)]
    match_of_right = [-1] * k

    def augment(i: int, visited: list[bool]) -> bool:
        for j in range(k):
            if allowed[i][j] and not visited[j]:
                visited[j] = True
                if match_of_right[j] < 0 or augment(match_of_right[j], visited):
                    match_of_right[j] = i
                    return True
        return False

    return all(augment(i, [False] * k) for i in range(k))


def build_lstar(h: Hypergraph) -> AugmentedLineGraph:
    """All shift edges (intersecting hyperedges) plus all jump edges.

    Jump candidates are drawn from hyperedges incident to the union of
    the source's open neighbourhoods, then confirmed by the matching
    test; this is the polynomial replacement for scanning ordered target
    tuples."""
    if not h.line_graph_connected():
        raise GraphFormatError("hypergraph must be connected (its line graph is not)")
    m = h.m
    adjacency: list[set[int]] = [set() for _ in range(m)]
    labels: dict[tuple[int, int], str] = {}
    for i in range(m):
        for j in range(i + 1, m):
            if h.hyperedges[i] & h.hyperedges[j]:
                adjacency[i].add(j)
                adjacency[j].add(i)
                labels[(i, j)] = "shift"
    for i in range(m):
        reach: set[int] = set()
        for v in h.hyperedges[i]:
            for u in h.neighbourhood(v):
                reach.update(h.incidence[u])
        for j in sorted(reach):
            if j == i or j in adjacency[i]:
                continue
            if _hyper_jump_possible(h, h.hyperedges[i], h.hyperedges[j]):
                adjacency[i].add(j)
                adjacency[j].add(i)
                labels[(min(i, j), max(i, j))] = "jump"
    return AugmentedLineGraph(hypergraph=h, adjacency=adjacency, labels=labels)


@dataclass
class CscInstance:
    """Connected set cover instance: universe elements, a covering family,
    and a host adjacency over family indices."""

    universe_size: int
    family: list[frozenset[int]]
    host_adj: list[set[int]]


def greedy_connected_set_cover(inst: CscInstance) -> list[int]:
    """Greedy cover keeping the chosen family host-connected.

    Seeds with the largest-coverage set; afterwards picks the
    host-adjacent set covering the most new elements, and if only
    non-adjacent sets still help, splices the shortest host path to the
    best of them.  Ties break on smallest index."""
    total: set[int] = set()
    for s in inst.family:
        total |= s
    if not set(range(inst.universe_size)) <= total:
        raise InfeasibleError("family does not cover the universe")

    chosen: list[int] = []
    covered: set[int] = set()
    seed = max(range(len(inst.family)), key=lambda i: (len(inst.family[i]), -i))
    chosen.append(seed)
    covered |= inst.family[seed]

    while len(covered) < inst.universe_size:
        adjacent = {j for i in chosen for j in inst.host_adj[i]} - set(chosen)
        best = None
        for j in sorted(adjacent):
            gain = len(inst.family[j] - covered)
            if gain > 0 and (best is None or gain > best[0]):
                best = (gain, j)
        if best is not None:
            chosen.append(best[1])
            covered |= inst.family[best[1]]
            continue
        # no adjacent set helps: splice a host path to the best outside set
        target = None
        for j in sorted(set(range(len(inst.family))) - set(chosen)):
            gain = len(inst.family[j] - covered)
            if gain > 0 and (target is None or gain > target[0]):
                target = (gain, j)
        if target is None:
            raise InfeasibleError("cover stalled although elements remain")
        path = _host_path(inst.host_adj, set(chosen), target[1])
        for j in path:
            if j not in chosen:
                chosen.append(j)
                covered |= inst.family[j]
    return chosen


def _host_path(host_adj: list[set[int]], sources: set[int], target: int) -> list[int]:
    prev: dict[int, int] = {i: i for i in sources}
    queue = deque(sorted(sources))
    while queue:
        i = queue.popleft()
        if i == target:
            path = [i]
            while prev[path[-1]] != path[-1]:
                path.append(prev[path[-1]])
            path.reverse()
            return path
        for j in sorted(host_adj[i]):
            if j not in prev:
                prev[j] = i
                queue.append(j)
    raise InfeasibleError("host graph leaves the target set unreachable")


def _cover_euler_walk(adjacency: list[set[int]], cover: list[int]) -> list[int]:
    """Spanning-tree-of-the-cover doubling: Euler circuit on the doubled
    tree, truncated at the point where every cover member has appeared,
    minimized over starting members."""
    chosen = sorted(set(cover))
    if len(chosen) == 1:
        return [chosen[0]]
    in_cover = set(chosen)
    tree: dict[int, list[int]] = {i: [] for i in chosen}
    seen = {chosen[0]}
    queue = deque([chosen[0]])
    while queue:
        i = queue.popleft()
        for j in sorted(adjacency[i] & in_cover):
            if j not in seen:
                seen.add(j)
                tree[i].append(j)
                tree[j].append(i)
                queue.append(j)
    if len(seen) != len(chosen):
        raise InvariantViolationError("cover is not host-connected")

    def euler_from(start: int) -> list[int]:
        # doubled tree: every edge traversed twice by a DFS closed walk
        walk = [start]

        def dfs(v: int, parent: int) -> None:
            for u in tree[v]:
                if u != parent:
                    walk.append(u)
                    dfs(u, v)
                    walk.append(v)

        dfs(start, -1)
        return walk

    best: list[int] | None = None
    for start in chosen:
        walk = euler_from(start)
        need = set(chosen)
        out: list[int] = []
        for node in walk:
            out.append(node)
            need.discard(node)
            if not need:
                break
        if best is None or len(out) < len(best):
            best = out
    assert best is not None
    return best


@dataclass
class HyperWalkResult:
    walk: list[int]
    cover: list[int]
    lstar: AugmentedLineGraph
    covering: bool


def solve_khwp_hypergraph(h: Hypergraph, caps: Caps = DEFAULT_CAPS) -> HyperWalkResult:
    """Spanning hyperedge walk via connected-set-cover: greedy cover over
    the augmented line graph, then a doubled-tree Euler traversal.  The
    walk length never exceeds twice the cover size."""
    lstar = build_lstar(h)
    inst = CscInstance(universe_size=h.n, family=list(h.hyperedges), host_adj=lstar.adjacency)
    cover = greedy_connected_set_cover(inst)
    walk = _cover_euler_walk(lstar.adjacency, cover)
    covered: set[int] = set()
    for eid in walk:
        covered |= h.hyperedges[eid]
    covering = covered == set(range(h.n))
    if not covering:
        raise InvariantViolationError("hyperedge walk does not cover the vertex set")
    if len(walk) - 1 > 2 * len(cover):
        raise InvariantViolationError("walk exceeds twice the cover size")
    for a, b in zip(walk, walk[1:]):
        if b not in lstar.adjacency[a]:
            raise InvariantViolationError(f"hyperedges {a} and {b} are not adjacent in L*")
    return HyperWalkResult(walk=walk, cover=cover, lstar=lstar, covering=covering)


def format_hyperwalk(result: HyperWalkResult) -> str:
    lines = [
        f"hyperedges {len(result.walk)} length {len(result.walk) - 1} "
        f"covering {1 if result.covering else 0}"
    ]
    for t, eid in enumerate(result.walk):
        lines.append(f"{t}: e{eid + 1}")
    return "\n".join(lines) + "\n"


# -- simple-graph adaptation ----------------------------------------------


def _graph_transition_possible(g: Graph, s: frozenset[int], t: frozenset[int]) -> bool:
    """One-step feasibility between two configurations: stay-or-move
    matching over closed neighbourhoods."""
    return _matching_assignment(tuple(sorted(s)), t, g) is not None


@dataclass
class GraphCscResult:
    walk: TransitionWalk
    cover: list[int]
    family: list[frozenset[int]]
    host_adj: list[set[int]]
    labels: dict[tuple[int, int], str]


def solve_khwp_graph_csc(g: Graph, k: int, caps: Caps = DEFAULT_CAPS) -> GraphCscResult:
    """Constant-k graph variant: family = connected k-subsets, host edges
    = one-step transitions (shift label when the subsets intersect, jump
    when disjoint), then cover, double, Euler, and expand into a valid
    configuration walk."""
    if k > 4:
        raise GraphFormatError(f"graph connected-cover solver capped at k <= 4, got k={k}")
    if not 1 <= k <= g.n:
        raise GraphFormatError(f"k={k} out of range for n={g.n}")
    family = enumerate_connected_ksubsets(g, k)
    host_adj: list[set[int]] = [set() for _ in range(len(family))]
    labels: dict[tuple[int, int], str] = {}
    for i in range(len(family)):
        for j in range(i + 1, len(family)):
            if _graph_transition_possible(g, family[i], family[j]):
                host_adj[i].add(j)
                host_adj[j].add(i)
                labels[(i, j)] = "shift" if family[i] & family[j] else "jump"
    inst = CscInstance(universe_size=g.n, family=family, host_adj=host_adj)
    cover = greedy_connected_set_cover(inst)
    node_walk = _cover_euler_walk(host_adj, cover)
    ordered: list[tuple[int, ...]] = [tuple(sorted(family[node_walk[0]]))]
    for eid in node_walk[1:]:
        assignment = _matching_assignment(ordered[-1], family[eid], g)
        if assignment is None:
            raise InvariantViolationError("host edge without a realizable transition")
        ordered.append(assignment)
    walk = TransitionWalk(k=k, configs=ordered, host=g)
    return GraphCscResult(walk=walk, cover=cover, family=family, host_adj=host_adj, labels=labels)
