"""Named desk-check fixtures used by golden tests and the CLI generator.

The 18-vertex tree ships with vertex ids chosen so the documented
smallest-id tie-breaks reproduce the reference execution exactly
(vertex i of the drawing maps to id i mod 18, which puts the far
diameter endpoint at id 0).  The 9-vertex 3-uniform hypergraph realizes
the reference jump structure: exactly three jump pairs beyond the
shifts and a spanning walk optimum of three transitions.
"""

from __future__ import annotations

from .graphs import Graph, Hypergraph

# drawing label i (1-based) maps to vertex id i % 18
FIG1_EDGES = [
    (1, 2), (2, 3), (3, 4), (4, 5),
    (5, 6), (6, 7), (6, 8), (8, 9),
    (5, 10), (10, 11), (11, 12), (12, 13), (12, 14),
    (5, 15), (15, 16), (16, 17), (17, 0),
]

# the reference single-agent walk in fixture ids
FIG1_W1 = [1, 2, 3, 4, 5, 6, 7, 6, 8, 9, 8, 6, 5,
           10, 11, 12, 13, 12, 14, 12, 11, 10, 5, 15, 16, 17, 0]

# the sixteen 4-agent configurations as vertex sets, in walk order
FIG1_CONFIG_SETS = [
    {1, 2, 3, 4}, {2, 3, 4, 5}, {3, 4, 5, 6}, {4, 5, 6, 7},
    {4, 5, 6, 8}, {5, 6, 8, 9}, {5, 6, 8, 10}, {5, 6, 10, 11},
    {5, 10, 11, 12}, {10, 11, 12, 13}, {10, 11, 12, 14}, {5, 10, 11, 12},
    {5, 10, 11, 15}, {5, 10, 15, 16}, {5, 15, 16, 17}, {0, 15, 16, 17},
]


def fig1_tree() -> Graph:
    return Graph(18, FIG1_EDGES)


# 9 vertices (ids 0..8 for drawing labels 1..9), 8 hyperedges e1..e8
# (ids 0..7); realizes the reference jump structure exactly.
FIG6_HYPEREDGES: list[tuple[int, int, int]] = [
    (0, 1, 2),  # e1
    (2, 4, 6),  # e2
    (0, 2, 7),  # e3
    (0, 1, 3),  # e4
    (1, 5, 7),  # e5
    (4, 5, 7),  # e6
    (3, 6, 7),  # e7
    (5, 6, 8),  # e8
]


def fig6_hypergraph() -> Hypergraph:
    return Hypergraph(9, 3, [frozenset(e) for e in FIG6_HYPEREDGES])


# expected jump pairs beyond the shifts, as 0-based hyperedge id pairs
FIG6_JUMPS = [(0, 5), (0, 6), (1, 4)]
# one optimal spanning walk (0-based ids of e1, e7, e6, e8)
FIG6_OPTIMAL_WALK = [0, 6, 5, 7]


# 16-vertex walkthrough graph for the contracted-tree construction:
# letters a..p map to ids 0..15.  Holds one 4-cycle gadget on {i,j,o,p},
# one on {a,b,d,e}, a 2x3 grid on {c,d,g,h,k,l}, leftovers {f,m,n}, and a
# single bridge (h,i) between the two halves.
FIG5_EDGES = [
    (8, 9), (9, 15), (14, 15), (8, 14),       # cycle i-j-p-o
    (0, 1), (1, 4), (3, 4), (0, 3),           # cycle a-b-e-d
    (2, 3), (6, 7), (10, 11), (2, 6), (3, 7), (6, 11), (7, 10),  # grid c,d,h,g,l,k
    (7, 8),                                    # bridge h-i
    (4, 5), (11, 12), (12, 13),                # leftovers f, m, n
]


def fig5_graph() -> Graph:
    return Graph(16, FIG5_EDGES)
