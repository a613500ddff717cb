"""Seeded instance generators for the CLI and benchmark sweeps.

All generators take an integer seed and are deterministic for a fixed
seed (Python's Mersenne Twister via random.Random; the identifier
``mt19937`` is embedded in generated instance ids so sweeps can be
replayed).
"""

from __future__ import annotations

import random

from .errors import GraphFormatError
from .graphs import Graph, Hypergraph

PRNG_ID = "mt19937"


def generate_tree(n: int, seed: int) -> Graph:
    """Uniform random attachment tree on n vertices."""
    if n < 1:
        raise GraphFormatError("tree needs n >= 1")
    rng = random.Random(seed)
    edges = [(rng.randrange(v), v) for v in range(1, n)]
    return Graph(n, edges)


def generate_random_graph(n: int, p: float, seed: int, retries: int = 200) -> Graph:
    """Connected G(n, p); resamples until connected or the retry budget
    runs out."""
    if n < 1:
        raise GraphFormatError("graph needs n >= 1")
    if not 0.0 <= p <= 1.0:
        raise GraphFormatError(f"edge probability {p} out of [0, 1]")
    rng = random.Random(seed)
    for _ in range(retries):
        edges = [
            (u, v)
            for u in range(n)
            for v in range(u + 1, n)
            if rng.random() < p
        ]
        g = Graph(n, edges, require_connected=False)
        if g.is_connected():
            return g
    raise GraphFormatError(f"no connected sample after {retries} tries (n={n}, p={p})")


def generate_grid(rows: int, cols: int) -> Graph:
    """rows x cols grid graph; vertex (r, c) gets id r*cols + c."""
    if rows < 1 or cols < 1:
        raise GraphFormatError("grid needs rows >= 1 and cols >= 1")
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                edges.append((v, v + 1))
            if r + 1 < rows:
                edges.append((v, v + cols))
    return Graph(rows * cols, edges)


def generate_hypergraph(n: int, m: int, k: int, seed: int, retries: int = 500) -> Hypergraph:
    """Random connected k-uniform hypergraph with m distinct hyperedges
    covering all n vertices."""
    if k > n:
        raise GraphFormatError(f"arity k={k} exceeds n={n}")
    rng = random.Random(seed)
    for _ in range(retries):
        chosen: set[frozenset[int]] = set()
        guard = 0
        while len(chosen) < m and guard < 50 * m:
            guard += 1
            chosen.add(frozenset(rng.sample(range(n), k)))
        if len(chosen) < m:
            continue
        h = Hypergraph(n, k, sorted(chosen, key=sorted))
        covered: set[int] = set()
        for e in h.hyperedges:
            covered |= e
        if covered == set(range(n)) and h.line_graph_connected():
            return h
    raise GraphFormatError(f"no connected covering sample after {retries} tries")
