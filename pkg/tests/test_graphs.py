import itertools

import pytest

from conftest import all_connected_graphs, complete_graph, path_graph, petersen_graph, star_graph
from khwp.errors import GraphFormatError, NotATreeError
from khwp.fixtures import fig1_tree
from khwp.graphs import (
    Graph,
    GridPattern,
    dump_graph,
    enumerate_c4,
    enumerate_connected_ksubsets,
    enumerate_grid_2x3,
    load_graph,
    shortest_path_matrix,
    tree_diameter,
)
from khwp.generators import generate_random_graph, generate_tree


class TestLoadGraph:
    def test_smallest_path(self):
        g = load_graph("3 2\n0 1\n1 2\n")
        assert g.n == 3 and g.m == 2
        assert g.has_edge(0, 1) and g.has_edge(1, 2) and not g.has_edge(0, 2)

    def test_complete_graph(self):
        text = "4 6\n" + "\n".join(f"{u} {v}" for u in range(4) for v in range(u + 1, 4))
        g = load_graph(text)
        assert g.m == 6
        assert all(g.degree(v) == 3 for v in range(4))

    def test_disconnected_rejected(self):
        with pytest.raises(GraphFormatError, match="vertex 3 unreachable"):
            load_graph("4 3\n0 1\n1 2\n0 2\n")

    def test_self_loop_rejected(self):
        with pytest.raises(GraphFormatError, match="self-loop"):
            load_graph("2 1\n1 1\n")

    def test_duplicate_edge_rejected(self):
        with pytest.raises(GraphFormatError, match="duplicate"):
            load_graph("2 2\n0 1\n1 0\n")

    def test_comments_skipped(self):
        g = load_graph("# a path\n3 2\n0 1\n# middle\n1 2\n")
        assert g.m == 2

    def test_roundtrip(self):
        g = generate_random_graph(7, 0.5, seed=3)
        assert load_graph(dump_graph(g)).edges == g.edges


class TestTreeDiameter:
    def test_path(self):
        assert tree_diameter(path_graph(5))[0] == 4

    def test_star(self):
        assert tree_diameter(star_graph(3))[0] == 2

    def test_fixture_tree(self):
        diam, path = tree_diameter(fig1_tree())
        assert diam == 8
        assert path[0] == 1 and path[-1] == 0
        # consistency with the single-agent walk formula
        assert 2 * 17 - diam == 26

    def test_path_is_longest(self):
        for seed in range(30):
            tree = generate_tree(3 + seed % 10, seed)
            diam, path = tree_diameter(tree)
            assert len(path) == diam + 1
            dist = shortest_path_matrix(tree)
            assert diam == max(max(row) for row in dist)

    def test_not_a_tree(self):
        with pytest.raises(NotATreeError):
            tree_diameter(complete_graph(4))


def _brute_c4_count(g: Graph) -> int:
    found = set()
    for quad in itertools.permutations(range(g.n), 4):
        a, b, c, d = quad
        if g.has_edge(a, b) and g.has_edge(b, c) and g.has_edge(c, d) and g.has_edge(d, a):
            rotations = {tuple(quad[(s + i) % 4] for i in range(4)) for s in range(4)}
            rotations |= {tuple(reversed(r)) for r in rotations}
            found.add(min(rotations))
    return len(found)


class TestEnumerateC4:
    def test_tree_has_none(self):
        assert enumerate_c4(fig1_tree()) == []

    def test_c4_graph(self):
        g = Graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
        assert len(enumerate_c4(g)) == 1

    def test_k4(self, k4):
        assert len(enumerate_c4(k4)) == 3
        assert _brute_c4_count(k4) == 3

    def test_edges_exist(self, k4):
        for v1, v2, v3, v4 in enumerate_c4(k4):
            for a, b in ((v1, v2), (v2, v3), (v3, v4), (v4, v1)):
                assert k4.has_edge(a, b)

    def test_matches_brute_force_small(self):
        for seed in range(40):
            g = generate_random_graph(4 + seed % 5, 0.55, seed)
            assert len(enumerate_c4(g)) == _brute_c4_count(g)


def _brute_grid_count(g: Graph) -> int:
    found = set()
    for six in itertools.permutations(range(g.n), 6):
        pattern = GridPattern(six)
        if all(g.has_edge(a, b) for a, b in pattern.edges()):
            v1, v2, v3, v4, v5, v6 = six
            variants = [
                (v1, v2, v3, v4, v5, v6),
                (v2, v1, v4, v3, v6, v5),
                (v5, v6, v3, v4, v1, v2),
                (v6, v5, v4, v3, v2, v1),
            ]
            found.add(min(variants))
    return len(found)


class TestEnumerateGrid:
    def test_tree_has_none(self):
        assert enumerate_grid_2x3(fig1_tree()) == []

    def test_grid_graph_self_embedding(self):
        g = Graph(6, [(0, 1), (2, 3), (4, 5), (0, 3), (1, 2), (3, 4), (2, 5)])
        patterns = enumerate_grid_2x3(g)
        assert len(patterns) >= 1
        assert any(set(p.vertices) == set(range(6)) for p in patterns)

    def test_pattern_edges_exist(self):
        g = complete_graph(6)
        for p in enumerate_grid_2x3(g):
            assert all(g.has_edge(a, b) for a, b in p.edges())

    def test_k6_matches_brute_force(self):
        g = complete_graph(6)
        assert len(enumerate_grid_2x3(g)) == _brute_grid_count(g)

    def test_random_matches_brute_force(self):
        for seed in range(10):
            g = generate_random_graph(7, 0.6, seed)
            assert len(enumerate_grid_2x3(g)) == _brute_grid_count(g)


class TestShortestPaths:
    def test_p3(self):
        dist = shortest_path_matrix(path_graph(3))
        assert dist[0][2] == 2

    def test_k4(self, k4):
        dist = shortest_path_matrix(k4)
        assert all(dist[u][v] == 1 for u in range(4) for v in range(4) if u != v)

    def test_fixture_endpoints(self):
        dist = shortest_path_matrix(fig1_tree())
        assert dist[1][0] == 8  # the two diameter endpoints

    def test_triangle_inequality(self):
        for seed in range(20):
            g = generate_random_graph(3 + seed % 6, 0.5, seed)
            dist = shortest_path_matrix(g)
            for u in range(g.n):
                for v in range(g.n):
                    for w in range(g.n):
                        assert dist[u][w] <= dist[u][v] + dist[v][w]
                assert dist[u][u] == 0


class TestConnectedKSubsets:
    def test_p4_pairs_are_edges(self, p4):
        assert enumerate_connected_ksubsets(p4, 2) == [
            frozenset(e) for e in [(0, 1), (1, 2), (2, 3)]
        ]

    def test_p4_whole(self, p4):
        assert enumerate_connected_ksubsets(p4, 4) == [frozenset(range(4))]

    def test_petersen_triples_match_brute_force(self):
        g = petersen_graph()
        brute = [
            frozenset(s)
            for s in itertools.combinations(range(10), 3)
            if g.induced_connected(s)
        ]
        assert set(enumerate_connected_ksubsets(g, 3)) == set(brute)

    def test_exhaustive_on_all_small_graphs(self):
        for g in all_connected_graphs(4):
            for k in (1, 2, 3, 4):
                brute = {
                    frozenset(s)
                    for s in itertools.combinations(range(4), k)
                    if g.induced_connected(s)
                }
                assert set(enumerate_connected_ksubsets(g, k)) == brute
