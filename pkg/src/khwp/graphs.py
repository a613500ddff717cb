"""Graph and hypergraph storage plus the traversal primitives everything
else builds on: BFS distances, tree diameter via double sweep, and the
subgraph-pattern enumerations (4-cycles, 2x3 grids, connected k-subsets).

Vertices are dense 0-based integers so downstream state encodings can use
bitmasks.  Both structures are immutable after construction and all
operations here are pure reads.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .errors import GraphFormatError, NotATreeError


class Graph:
    """Simple undirected graph over vertices 0..n-1, adjacency-set backed.

    Rejects self-loops and duplicate edges.  Connectivity is validated at
    construction unless ``require_connected=False`` (only pattern
    enumeration tolerates disconnected hosts).
    """

    __slots__ = ("n", "edges", "adj", "_adj_bits")

    def __init__(self, n: int, edges, require_connected: bool = True):
        if n < 1:
            raise GraphFormatError("graph needs at least one vertex")
        self.n = n
        self.adj: list[set[int]] = [set() for _ in range(n)]
        seen: set[tuple[int, int]] = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphFormatError(f"vertex out of range in edge ({u}, {v})")
            if u == v:
                raise GraphFormatError(f"self-loop at vertex {u}")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise GraphFormatError(f"duplicate edge ({u}, {v})")
            seen.add(key)
            self.adj[u].add(v)
            self.adj[v].add(u)
        self.edges: frozenset[tuple[int, int]] = frozenset(seen)
        self._adj_bits: list[int] | None = None
        if require_connected:
            unreachable = self._first_unreachable()
            if unreachable is not None:
                raise GraphFormatError(f"graph is disconnected: vertex {unreachable} unreachable")

    # -- basic queries -------------------------------------------------

    @property
    def m(self) -> int:
        return len(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def adj_bits(self) -> list[int]:
        """Per-vertex neighbour bitmasks (cached; used by the oracle)."""
        if self._adj_bits is None:
            self._adj_bits = [sum(1 << u for u in self.adj[v]) for v in range(self.n)]
        return self._adj_bits

    def is_connected(self) -> bool:
        return self._first_unreachable() is None

    def _first_unreachable(self) -> int | None:
        seen = [False] * self.n
        seen[0] = True
        queue = deque([0])
        count = 1
        while queue:
            v = queue.popleft()
            for u in self.adj[v]:
                if not seen[u]:
                    seen[u] = True
                    count += 1
                    queue.append(u)
        if count == self.n:
            return None
        return seen.index(False)

    def is_tree(self) -> bool:
        return self.m == self.n - 1 and self.is_connected()

    def induced_connected(self, vertices) -> bool:
        """True iff the subgraph induced by ``vertices`` is connected."""
        vs = set(vertices)
        if not vs:
            return False
        start = next(iter(vs))
        seen = {start}
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for u in self.adj[v] & vs:
                if u not in seen:
                    seen.add(u)
                    queue.append(u)
        return len(seen) == len(vs)

    # -- distances -----------------------------------------------------

    def bfs_distances(self, source: int) -> list[int]:
        dist = [-1] * self.n
        dist[source] = 0
        queue = deque([source])
        while queue:
            v = queue.popleft()
            for u in self.adj[v]:
                if dist[u] < 0:
                    dist[u] = dist[v] + 1
                    queue.append(u)
        return dist

    def shortest_path(self, source: int, target: int) -> list[int]:
        """One shortest path as a vertex sequence (BFS parents, smallest-id
        tie-break for determinism)."""
        parent = [-1] * self.n
        parent[source] = source
        queue = deque([source])
        while queue:
            v = queue.popleft()
            if v == target:
                break
            for u in sorted(self.adj[v]):
                if parent[u] < 0:
                    parent[u] = v
                    queue.append(u)
        if parent[target] < 0:
            raise GraphFormatError(f"no path from {source} to {target}")
        path = [target]
        while path[-1] != source:
            path.append(parent[path[-1]])
        path.reverse()
        return path


def shortest_path_matrix(g: Graph) -> list[list[int]]:
    """All-pairs hop distances; the metric closure used by the path
    heuristics."""
    return [g.bfs_distances(v) for v in range(g.n)]


def tree_diameter(g: Graph) -> tuple[int, list[int]]:
    """Diameter of a tree plus one explicit longest path.

    Double BFS sweep: farthest vertex from vertex 0, then farthest from
    that.  Ties go to the smallest vertex id in both sweeps, and the
    returned path runs from the first sweep's endpoint to the second's;
    solvers start walks at the first endpoint.
    """
    if not g.is_tree():
        raise NotATreeError(f"graph with n={g.n}, m={g.m} is not a tree")

    def farthest_from(src: int) -> int:
        dist = g.bfs_distances(src)
        best = max(dist)
        return min(v for v in range(g.n) if dist[v] == best)

    u = farthest_from(0)
    dist = g.bfs_distances(u)
    best = max(dist)
    w = min(v for v in range(g.n) if dist[v] == best)
    path = g.shortest_path(u, w)
    return best, path


# -- pattern enumeration ------------------------------------------------


@dataclass(frozen=True)
class GridPattern:
    """A 2x3 grid embedding, stored as the ordered 6-tuple (v1..v6).

    Layout (rows x columns):

        v1  v4  v5
        v2  v3  v6

    so the seven pattern edges are (v1,v2), (v3,v4), (v5,v6), (v1,v4),
    (v2,v3), (v4,v5), (v3,v6).  Extra chords in the host graph are
    allowed; only the presence of these seven edges is required.
    """

    vertices: tuple[int, int, int, int, int, int]

    PATTERN_EDGES = ((0, 1), (2, 3), (4, 5), (0, 3), (1, 2), (3, 4), (2, 5))

    def edges(self) -> list[tuple[int, int]]:
        v = self.vertices
        return [(v[a], v[b]) for a, b in self.PATTERN_EDGES]


def _canonical_c4(cycle: tuple[int, int, int, int]) -> tuple[int, int, int, int]:
    """Rotate/reflect a 4-cycle so the smallest vertex is first and its
    smaller cycle-neighbour second."""
    best = None
    for seq in (cycle, cycle[::-1]):
        for shift in range(4):
            cand = tuple(seq[(shift + i) % 4] for i in range(4))
            if cand[0] == min(cycle) and (best is None or cand < best):
                best = cand
    assert best is not None
    return best


def enumerate_c4(g: Graph) -> list[tuple[int, int, int, int]]:
    """All distinct 4-cycles, one canonical tuple per cyclic structure.

    Adjacency-driven: extend each edge (a,b) by c in N(b) and close with
    d in N(c) & N(a).
    """
    found: set[tuple[int, int, int, int]] = set()
    for a, b in g.edges:
        for first, second in ((a, b), (b, a)):
            for c in g.adj[second]:
                if c == first:
                    continue
                for d in g.adj[c] & g.adj[first]:
                    if d == second:
                        continue
                    found.add(_canonical_c4((first, second, c, d)))
    return sorted(found)


def _grid_relabelings(v: tuple[int, ...]) -> list[tuple[int, ...]]:
    """The four automorphic presentations of a 2x3 grid tuple: identity,
    row swap, column reversal, both."""
    v1, v2, v3, v4, v5, v6 = v
    return [
        (v1, v2, v3, v4, v5, v6),
        (v2, v1, v4, v3, v6, v5),
        (v5, v6, v3, v4, v1, v2),
        (v6, v5, v4, v3, v2, v1),
    ]


def enumerate_grid_2x3(g: Graph) -> list[GridPattern]:
    """All distinct 2x3 grid embeddings, deduplicated to the
    lexicographically smallest automorphic 6-tuple.

    Anchored on the middle column (v4,v3), then the outer columns are
    pulled from the neighbourhood intersections, pruning on missing
    edges.
    """
    found: set[tuple[int, ...]] = set()
    for e_u, e_v in g.edges:
        for v4, v3 in ((e_u, e_v), (e_v, e_u)):
            for v1 in g.adj[v4]:
                if v1 == v3:
                    continue
                for v2 in g.adj[v1] & g.adj[v3]:
                    if v2 in (v4, v3, v1):
                        continue
                    for v5 in g.adj[v4]:
                        if v5 in (v3, v1, v2):
                            continue
                        for v6 in g.adj[v5] & g.adj[v3]:
                            if v6 in (v4, v3, v1, v2, v5):
                                continue
                            found.add(min(_grid_relabelings((v1, v2, v3, v4, v5, v6))))
    return [GridPattern(v) for v in sorted(found)]


def enumerate_connected_ksubsets(g: Graph, k: int) -> list[frozenset[int]]:
    """Every k-vertex set whose induced subgraph is connected.

    Grown from each seed vertex by frontier extension; duplicates removed
    by the visited table.
    """
    if not 1 <= k <= g.n:
        raise GraphFormatError(f"k={k} out of range for n={g.n}")
    if k == 1:
        return [frozenset((v,)) for v in range(g.n)]
    result: set[frozenset[int]] = set()
    seen: set[frozenset[int]] = set()

    def grow(current: frozenset[int]) -> None:
        if len(current) == k:
            result.add(current)
            return
        frontier = set()
        for v in current:
            frontier |= g.adj[v]
        for u in frontier - current:
            nxt = current | {u}
            if nxt not in seen:
                seen.add(nxt)
                grow(nxt)

    for v in range(g.n):
        grow(frozenset((v,)))
    return sorted(result, key=sorted)


# -- hypergraphs ---------------------------------------------------------


class Hypergraph:
    """k-uniform hypergraph: every hyperedge is a set of exactly k distinct
    vertices; duplicate hyperedges are rejected."""

    __slots__ = ("n", "k", "hyperedges", "incidence")

    def __init__(self, n: int, k: int, hyperedges):
        if n < 1 or k < 1:
            raise GraphFormatError("hypergraph needs n >= 1 and k >= 1")
        self.n = n
        self.k = k
        self.hyperedges: list[frozenset[int]] = []
        seen: set[frozenset[int]] = set()
        self.incidence: list[list[int]] = [[] for _ in range(n)]
        for eid, raw in enumerate(hyperedges):
            members = frozenset(raw)
            if len(members) != k or len(list(raw)) != k:
                raise GraphFormatError(f"hyperedge {eid} must have exactly {k} distinct vertices")
            if any(not 0 <= v < n for v in members):
                raise GraphFormatError(f"hyperedge {eid} has a vertex out of range")
            if members in seen:
                raise GraphFormatError(f"duplicate hyperedge {sorted(members)}")
            seen.add(members)
            self.hyperedges.append(members)
            for v in members:
                self.incidence[v].append(eid)

    @property
    def m(self) -> int:
        return len(self.hyperedges)

    def neighbourhood(self, v: int) -> set[int]:
        """Open neighbourhood: vertices sharing a hyperedge with v."""
        out: set[int] = set()
        for eid in self.incidence[v]:
            out |= self.hyperedges[eid]
        out.discard(v)
        return out

    def line_graph_connected(self) -> bool:
        if self.m == 0:
            return False
        seen = {0}
        queue = deque([0])
        while queue:
            eid = queue.popleft()
            for v in self.hyperedges[eid]:
                for other in self.incidence[v]:
                    if other not in seen:
                        seen.add(other)
                        queue.append(other)
        return len(seen) == self.m


# -- file formats --------------------------------------------------------


def _data_lines(text: str) -> list[str]:
    lines = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        lines.append(line)
    return lines


def load_graph(text: str, require_connected: bool = True) -> Graph:
    """Parse the edge-list format: first line ``n m``, then m lines ``u v``.
    Lines starting with ``#`` are comments."""
    lines = _data_lines(text)
    if not lines:
        raise GraphFormatError("empty graph document")
    head = lines[0].split()
    if len(head) != 2:
        raise GraphFormatError(f"header must be 'n m', got {lines[0]!r}")
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError as exc:
        raise GraphFormatError(f"non-integer header {lines[0]!r}") from exc
    if len(lines) - 1 != m:
        raise GraphFormatError(f"expected {m} edge lines, found {len(lines) - 1}")
    edges = []
    for line in lines[1:]:
        parts = line.split()
        if len(parts) != 2:
            raise GraphFormatError(f"edge line must be 'u v', got {line!r}")
        try:
            edges.append((int(parts[0]), int(parts[1])))
        except ValueError as exc:
            raise GraphFormatError(f"non-integer edge {line!r}") from exc
    return Graph(n, edges, require_connected=require_connected)


def dump_graph(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in sorted(g.edges))
    return "\n".join(lines) + "\n"


def load_hypergraph(text: str) -> Hypergraph:
    """Parse the hypergraph format: first line ``n m k``, then m lines of k
    vertex ids.  Comment lines start with ``#``."""
    lines = _data_lines(text)
    if not lines:
        raise GraphFormatError("empty hypergraph document")
    head = lines[0].split()
    if len(head) != 3:
        raise GraphFormatError(f"header must be 'n m k', got {lines[0]!r}")
    try:
        n, m, k = (int(x) for x in head)
    except ValueError as exc:
        raise GraphFormatError(f"non-integer header {lines[0]!r}") from exc
    if len(lines) - 1 != m:
        raise GraphFormatError(f"expected {m} hyperedge lines, found {len(lines) - 1}")
    hyperedges = []
    for line in lines[1:]:
        try:
            members = [int(x) for x in line.split()]
        except ValueError as exc:
            raise GraphFormatError(f"non-integer hyperedge {line!r}") from exc
        hyperedges.append(members)
    return Hypergraph(n, k, hyperedges)


def dump_hypergraph(h: Hypergraph) -> str:
    lines = [f"{h.n} {h.m} {h.k}"]
    lines.extend(" ".join(str(v) for v in sorted(e)) for e in h.hyperedges)
    return "\n".join(lines) + "\n"
