"""Configurations, transition classification, walk validation, the
1<->2 agent walk conversions, and the tree edge indicator that drives the
restricted multi-agent optimum.

A configuration is an ordered tuple of distinct vertices whose induced
subgraph is connected; slot i holds agent i.  Adjacency between
configurations is per-slot: each agent stays or moves along one edge.
A walk's length counts transitions, i.e. len(configs) - 1.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .errors import GraphFormatError, NotATreeError
from .graphs import Graph, tree_diameter


@dataclass(frozen=True)
class ConfigCheck:
    ok: bool
    reason: str | None = None
    witness: tuple[int, ...] | None = None


def validate_configuration(g: Graph, config) -> ConfigCheck:
    """Check distinctness and induced connectivity of one configuration."""
    slots = tuple(config)
    if len(slots) < 1:
        return ConfigCheck(False, "empty configuration")
    for v in slots:
        if not 0 <= v < g.n:
            return ConfigCheck(False, "vertex out of range", (v,))
    if len(set(slots)) != len(slots):
        dup = next(v for v in slots if slots.count(v) > 1)
        return ConfigCheck(False, "agents share a vertex", (dup,))
    if not g.induced_connected(slots):
        return ConfigCheck(False, "induced subgraph disconnected", slots)
    return ConfigCheck(True)


def classify_transition(g: Graph, config_a, config_b) -> int | None:
    """Return r = |new vertices| if the configurations are adjacent
    (per-slot stay-or-move), else None.  Both must be individually valid.
    """
    a, b = tuple(config_a), tuple(config_b)
    if len(a) != len(b):
        raise GraphFormatError(f"agent counts differ: {len(a)} vs {len(b)}")
    for check in (validate_configuration(g, a), validate_configuration(g, b)):
        if not check.ok:
            raise GraphFormatError(f"invalid configuration: {check.reason}")
    for va, vb in zip(a, b):
        if va != vb and not g.has_edge(va, vb):
            return None
    return len(set(b) - set(a))


@dataclass
class TransitionWalk:
    """A sequence of pairwise-adjacent configurations on a host graph."""

    k: int
    configs: list[tuple[int, ...]]
    host: Graph

    @property
    def length(self) -> int:
        return len(self.configs) - 1

    def covered(self) -> set[int]:
        out: set[int] = set()
        for c in self.configs:
            out.update(c)
        return out


@dataclass
class WalkReport:
    length: int
    spanning: bool
    valid: bool
    histogram: dict[int, int] = field(default_factory=dict)
    first_violation: str | None = None


def validate_walk(g: Graph, walk: TransitionWalk) -> WalkReport:
    """Full validation: every configuration valid, every consecutive pair
    adjacent; reports the transition histogram by r and spanning status.
    Violations are reported in the result, not raised."""
    if not walk.configs:
        return WalkReport(length=-1, spanning=False, valid=False,
                          first_violation="walk has no configurations")
    histogram: dict[int, int] = {}
    first_violation = None
    for idx, config in enumerate(walk.configs):
        if len(config) != walk.k:
            first_violation = f"config {idx}: expected {walk.k} slots, got {len(config)}"
            break
        check = validate_configuration(g, config)
        if not check.ok:
            first_violation = f"config {idx}: {check.reason} {check.witness}"
            break
    if first_violation is None:
        for idx in range(len(walk.configs) - 1):
            r = classify_transition(g, walk.configs[idx], walk.configs[idx + 1])
            if r is None:
                first_violation = f"configs {idx}->{idx + 1} are not adjacent"
                break
            histogram[r] = histogram.get(r, 0) + 1
    spanning = walk.covered() == set(range(g.n))
    return WalkReport(
        length=len(walk.configs) - 1,
        spanning=spanning,
        valid=first_violation is None,
        histogram=histogram,
        first_violation=first_violation,
    )


# -- 1 <-> 2 agent conversions -------------------------------------------


def two_to_one(walk: TransitionWalk) -> list[int]:
    """Flatten a 2-agent walk into a single-agent walk of length at most
    2*len(walk)+1 covering the same vertices.

    Visits each configuration's pair, alternating the slot order so every
    hop is a configuration edge or a per-slot move; equal consecutive
    vertices are dropped.
    """
    if walk.k != 2:
        raise GraphFormatError(f"two_to_one needs k=2, got k={walk.k}")
    seq: list[int] = []
    for t, (a, b) in enumerate(walk.configs):
        pair = (a, b) if t % 2 == 0 else (b, a)
        for v in pair:
            if not seq or seq[-1] != v:
                seq.append(v)
    return seq


def one_to_two(w1: list[int], g: Graph) -> TransitionWalk:
    """Slide a 2-agent window along a single-agent walk: configuration t is
    (w1[t], w1[t+1]).  Requires length >= 1 and no immediate repeats."""
    if len(w1) < 2:
        raise GraphFormatError("single-agent walk must have length >= 1 to seat two agents")
    configs: list[tuple[int, ...]] = []
    for t in range(len(w1) - 1):
        a, b = w1[t], w1[t + 1]
        if a == b:
            raise GraphFormatError(f"immediate repeat at step {t}")
        if not g.has_edge(a, b):
            raise GraphFormatError(f"({a}, {b}) is not an edge")
        configs.append((a, b))
    return TransitionWalk(k=2, configs=configs, host=g)


# -- tree quantities -------------------------------------------------------


def d_P_k(tree: Graph, path: list[int], k: int, edge: tuple[int, int]) -> int:
    """0/1 indicator for a tree edge relative to a path P.

    0 for edges on P.  For an off-path edge, let u be the endpoint closer
    to P and v the far one; the indicator is 1 iff the far-side component
    (after deleting the edge) contains a vertex at distance >= k from u.
    """
    u, v = edge
    if not tree.has_edge(u, v):
        raise GraphFormatError(f"({u}, {v}) is not an edge of the tree")
    path_set = set(path)
    path_edges = {frozenset((path[i], path[i + 1])) for i in range(len(path) - 1)}
    if frozenset((u, v)) in path_edges:
        return 0
    dist_to_path = _distance_to_set(tree, path_set)
    if dist_to_path[v] < dist_to_path[u]:
        u, v = v, u
    # scan the far-side component rooted at v (edge (u,v) removed) for a
    # vertex at distance >= k from u; depth of v is 1
    stack = [(v, 1)]
    seen = {u, v}
    while stack:
        x, depth = stack.pop()
        if depth >= k:
            return 1
        for y in tree.adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append((y, depth + 1))
    return 0


def _distance_to_set(g: Graph, sources: set[int]) -> list[int]:
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


def rhwp_lower_bound(tree: Graph, k: int) -> int:
    """(n - k) + sum of the edge indicators over the diameter path: the
    exact optimum of the restricted k-agent walk on a tree."""
    if not tree.is_tree():
        raise NotATreeError("rhwp_lower_bound needs a tree")
    if not 1 <= k <= tree.n:
        raise GraphFormatError(f"k={k} out of range for n={tree.n}")
    _, pstar = tree_diameter(tree)
    total = sum(d_P_k(tree, pstar, k, e) for e in tree.edges)
    return (tree.n - k) + total


# -- serialization ---------------------------------------------------------


def format_walk(walk: TransitionWalk, spanning: bool) -> str:
    """One line per step ``t: v_1 ... v_k`` under a fixed header."""
    lines = [f"k {walk.k} length {walk.length} spanning {1 if spanning else 0}"]
    for t, config in enumerate(walk.configs):
        lines.append(f"{t}: " + " ".join(str(v) for v in config))
    return "\n".join(lines) + "\n"


def parse_walk(text: str, host: Graph) -> TransitionWalk:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise GraphFormatError("empty walk document")
    head = lines[0].split()
    if len(head) != 6 or head[0] != "k" or head[2] != "length" or head[4] != "spanning":
        raise GraphFormatError(f"bad walk header {lines[0]!r}")
    k = int(head[1])
    configs: list[tuple[int, ...]] = []
    for line in lines[1:]:
        if ":" not in line:
            raise GraphFormatError(f"bad step line {line!r}")
        _, _, rest = line.partition(":")
        config = tuple(int(x) for x in rest.split())
        if len(config) != k:
            raise GraphFormatError(f"step has {len(config)} slots, expected {k}")
        configs.append(config)
    if len(configs) - 1 != int(head[3]):
        raise GraphFormatError("walk header length does not match step count")
    return TransitionWalk(k=k, configs=configs, host=host)
