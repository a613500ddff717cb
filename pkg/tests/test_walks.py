import random

import pytest

from conftest import complete_graph, path_graph
from khwp.errors import GraphFormatError
from khwp.fixtures import FIG1_CONFIG_SETS, FIG1_W1, fig1_tree
from khwp.generators import generate_random_graph, generate_tree
from khwp.graphs import tree_diameter
from khwp.oracle import exact_hk
from khwp.tree import one_hwp_tree
from khwp.walks import (
    TransitionWalk,
    classify_transition,
    d_P_k,
    format_walk,
    one_to_two,
    parse_walk,
    rhwp_lower_bound,
    two_to_one,
    validate_configuration,
    validate_walk,
)


class TestValidateConfiguration:
    def test_edge_ok(self):
        g = path_graph(3)
        assert validate_configuration(g, (0, 1)).ok

    def test_disconnected_pair(self):
        g = path_graph(3)
        check = validate_configuration(g, (0, 2))
        assert not check.ok and "disconnected" in check.reason

    def test_duplicate_vertex(self):
        g = path_graph(3)
        check = validate_configuration(g, (1, 1))
        assert not check.ok and check.witness == (1,)

    def test_fixture_initial_configuration(self):
        assert validate_configuration(fig1_tree(), (1, 2, 3, 4)).ok


class TestClassifyTransition:
    def test_stationary_is_zero(self, k4):
        assert classify_transition(k4, (0, 1), (0, 1)) == 0

    def test_two_new_vertices(self):
        # a 4-agent move where two agents step onto fresh vertices
        g = complete_graph(6)
        assert classify_transition(g, (0, 1, 2, 3), (4, 1, 3, 5)) == 2

    def test_not_adjacent(self):
        g = path_graph(4)
        assert classify_transition(g, (0, 1), (2, 3)) is None

    def test_mismatched_k(self, k4):
        with pytest.raises(GraphFormatError):
            classify_transition(k4, (0, 1), (0, 1, 2))

    def test_tree_transitions_bounded(self):
        """On trees, r never exceeds floor(k/2) for any valid transition."""
        rng = random.Random(7)
        for trial in range(300):
            k = rng.randint(2, 6)
            tree = generate_tree(rng.randint(k, 12), rng.randrange(10_000))
            pair = _random_transition(tree, k, rng)
            if pair is None:
                continue
            r = classify_transition(tree, pair[0], pair[1])
            assert r is not None and r <= k // 2


def _random_transition(g, k, rng, attempts=60):
    from khwp.graphs import enumerate_connected_ksubsets

    configs = enumerate_connected_ksubsets(g, k)
    if not configs:
        return None
    start = list(rng.choice(configs))
    rng.shuffle(start)
    for _ in range(attempts):
        nxt = []
        for v in start:
            options = [v] + sorted(g.adj[v])
            nxt.append(rng.choice(options))
        if validate_configuration(g, nxt).ok:
            return tuple(start), tuple(nxt)
    return None


class TestValidateWalk:
    def test_fixture_full_walk(self):
        tree = fig1_tree()
        walk = TransitionWalk(k=4, configs=[tuple(sorted(c)) for c in FIG1_CONFIG_SETS], host=tree)
        report = validate_walk(tree, walk)
        assert report.valid and report.spanning and report.length == 15

    def test_single_config_complete_graph(self):
        g = complete_graph(3)
        walk = TransitionWalk(k=3, configs=[(0, 1, 2)], host=g)
        report = validate_walk(g, walk)
        assert report.valid and report.spanning and report.length == 0

    def test_non_spanning(self, p4):
        walk = TransitionWalk(k=2, configs=[(0, 1), (1, 2)], host=p4)
        report = validate_walk(p4, walk)
        assert report.valid and not report.spanning and report.length == 1

    def test_violation_reported(self, p4):
        walk = TransitionWalk(k=2, configs=[(0, 1), (2, 3)], host=p4)
        report = validate_walk(p4, walk)
        assert not report.valid and "not adjacent" in report.first_violation


class TestTwoToOne:
    def test_single_edge(self):
        g = path_graph(2)
        walk = TransitionWalk(k=2, configs=[(0, 1)], host=g)
        assert two_to_one(walk) == [0, 1]

    def test_oracle_walks_meet_bound(self):
        """Flattening an optimal 2-agent walk stays within 2*len + 1."""
        for seed in range(60):
            g = generate_random_graph(3 + seed % 6, 0.55, seed)
            h2, w2 = exact_hk(g, 2)
            w1 = two_to_one(w2)
            assert len(w1) - 1 <= 2 * h2 + 1
            for a, b in zip(w1, w1[1:]):
                assert a != b and g.has_edge(a, b)
            assert set(w1) == w2.covered()

    def test_p4_walk_bound(self, p4):
        walk = TransitionWalk(k=2, configs=[(0, 1), (1, 2), (2, 3)], host=p4)
        w1 = two_to_one(walk)
        report = validate_walk(p4, TransitionWalk(k=1, configs=[(v,) for v in w1], host=p4))
        assert report.valid and len(w1) - 1 <= 7


class TestOneToTwo:
    def test_p3(self):
        g = path_graph(3)
        walk = one_to_two([0, 1, 2], g)
        assert walk.configs == [(0, 1), (1, 2)] and walk.length == 1

    def test_fixture_walk(self):
        tree = fig1_tree()
        walk = one_to_two(FIG1_W1, tree)
        report = validate_walk(tree, walk)
        assert walk.length == 25 and report.valid and report.spanning

    def test_solver_walks_convert(self):
        for seed in range(30):
            tree = generate_tree(3 + seed % 8, seed)
            w1 = one_hwp_tree(tree)
            walk = one_to_two(w1, tree)
            report = validate_walk(tree, walk)
            assert report.valid and report.spanning
            assert walk.length == len(w1) - 2

    def test_rejects_trivial_walk(self):
        with pytest.raises(GraphFormatError):
            one_to_two([0], path_graph(3))


class TestEdgeIndicator:
    def test_on_path_edges_zero(self):
        tree = fig1_tree()
        _, pstar = tree_diameter(tree)
        path_edges = list(zip(pstar, pstar[1:]))
        for e in path_edges:
            assert d_P_k(tree, pstar, 4, e) == 0

    def test_fixture_values(self):
        tree = fig1_tree()
        _, pstar = tree_diameter(tree)
        assert d_P_k(tree, pstar, 4, (4, 9)) == 1  # the branch deep enough to recross
        for e in tree.edges:
            if frozenset(e) != frozenset((4, 9)):
                assert d_P_k(tree, pstar, 4, e) == 0

    def test_monotone_in_k(self):
        for seed in range(20):
            tree = generate_tree(9, seed)
            _, pstar = tree_diameter(tree)
            for e in tree.edges:
                values = [d_P_k(tree, pstar, k, e) for k in range(2, 8)]
                assert values == sorted(values, reverse=True)

    def test_non_edge_rejected(self):
        tree = path_graph(4)
        with pytest.raises(GraphFormatError):
            d_P_k(tree, [0, 1, 2, 3], 2, (0, 3))


class TestLowerBound:
    def test_fixture(self):
        assert rhwp_lower_bound(fig1_tree(), 4) == 15

    def test_paths(self):
        for n in range(2, 9):
            for k in range(1, n + 1):
                assert rhwp_lower_bound(path_graph(n), k) == n - k

    def test_matches_oracle_small_k(self):
        """The bound is tight for k <= 3 where every transition is forced
        to introduce exactly one vertex."""
        for seed in range(25):
            tree = generate_tree(5 + seed % 5, seed)
            for k in (2, 3):
                opt, _ = exact_hk(tree, k)
                assert rhwp_lower_bound(tree, k) == opt


class TestSerialization:
    def test_roundtrip(self):
        tree = fig1_tree()
        walk = one_to_two(FIG1_W1, tree)
        report = validate_walk(tree, walk)
        text = format_walk(walk, report.spanning)
        back = parse_walk(text, tree)
        assert back.configs == walk.configs and back.k == 2

    def test_header_shape(self):
        g = path_graph(2)
        text = format_walk(TransitionWalk(k=2, configs=[(0, 1)], host=g), True)
        assert text.splitlines()[0] == "k 2 length 0 spanning 1"
