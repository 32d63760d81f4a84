import numpy as np
import pytest
from hypothesis import given, settings

import reference
from minmapcc import (
    Graph,
    bfs_components,
    exact_metrics,
    fastsv,
    generate,
    normalize_labels,
    rem_union_find,
    summarize,
)

from conftest import parent_forests, small_graphs


class TestRemUnionFind:
    def test_path(self):
        g = Graph.from_edges(3, [(0, 1), (1, 2)])
        assert rem_union_find(g).tolist() == [0, 0, 0]

    def test_two_components(self, two_components):
        assert rem_union_find(two_components).tolist() == [0, 0, 2, 2]

    def test_star(self):
        assert rem_union_find(generate("star", n=5)).tolist() == [0] * 5

    def test_self_loops_ignored(self):
        g = Graph.from_edges(3, [(1, 1), (0, 2)])
        assert rem_union_find(g).tolist() == [0, 1, 0]

    @settings(max_examples=60, deadline=None)
    @given(g=small_graphs())
    def test_matches_scipy(self, g):
        assert np.array_equal(rem_union_find(g),
                              reference.component_labels(g.n, g.edges))


class TestBfsComponents:
    def test_cycle(self):
        assert bfs_components(generate("cycle", n=4)).tolist() == [0] * 4

    def test_no_edges(self):
        assert bfs_components(Graph.from_edges(3, [])).tolist() == [0, 1, 2]

    def test_agrees_with_union_find_on_random_graph(self):
        g = generate("erdos_renyi", n=50, p=0.1, seed=7)
        assert np.array_equal(bfs_components(g), rem_union_find(g))

    @settings(max_examples=60, deadline=None)
    @given(g=small_graphs())
    def test_cross_oracle_agreement(self, g):
        # the two oracle routes must agree on every graph
        assert np.array_equal(bfs_components(g), rem_union_find(g))


class TestFastSV:
    def test_path(self):
        labels, _ = fastsv(generate("path", n=3))
        assert labels.tolist() == [0, 0, 0]

    def test_two_components(self, two_components):
        labels, _ = fastsv(two_components)
        assert labels.tolist() == rem_union_find(two_components).tolist()

    def test_random_graph_matches_oracle(self):
        g = generate("erdos_renyi", n=200, p=0.02, seed=1)
        labels, _ = fastsv(g)
        assert np.array_equal(labels, rem_union_find(g))

    def test_stats_deterministic(self):
        g = generate("erdos_renyi", n=120, p=0.03, seed=5)
        a_labels, a = fastsv(g)
        b_labels, b = fastsv(g)
        assert np.array_equal(a_labels, b_labels)
        assert a.sweeps_executed == b.sweeps_executed
        assert a.changed_per_sweep == b.changed_per_sweep

    def test_stats_invariant(self):
        for seed in range(6):
            g = generate("erdos_renyi", n=40, p=0.08, seed=seed)
            _, stats = fastsv(g)
            assert stats.sweeps_until_stable <= stats.sweeps_executed \
                <= stats.sweeps_until_stable + 1

    def test_empty_graph(self):
        labels, stats = fastsv(Graph.from_edges(0, []))
        assert labels.size == 0
        assert stats.sweeps_executed == 1

    @settings(max_examples=50, deadline=None)
    @given(g=small_graphs())
    def test_matches_oracle(self, g):
        labels, _ = fastsv(g)
        assert np.array_equal(labels, rem_union_find(g))


class TestNormalizeLabels:
    def test_maps_classes_to_minimum(self):
        assert normalize_labels(np.array([1, 1, 3, 3])).tolist() == [0, 0, 2, 2]

    def test_identity_case(self):
        assert normalize_labels(np.array([0, 0, 0])).tolist() == [0, 0, 0]

    def test_class_minimum_is_zero(self):
        assert normalize_labels(np.array([2, 2, 2])).tolist() == [0, 0, 0]

    def test_resolves_chains(self):
        # 3 -> 2 -> 1 (fixed point), so {1, 2, 3} share representative 1
        assert normalize_labels(np.array([0, 1, 1, 2])).tolist() == [0, 1, 1, 1]

    def test_cycle_rejected(self):
        with pytest.raises(ValueError):
            normalize_labels(np.array([1, 0]))

    def test_out_of_range_rejected(self):
        with pytest.raises(ValueError):
            normalize_labels(np.array([0, 9]))

    @settings(max_examples=60, deadline=None)
    @given(labels=parent_forests())
    def test_idempotent(self, labels):
        once = normalize_labels(labels)
        assert np.array_equal(normalize_labels(once), once)


class TestSummarize:
    def test_two_pairs(self):
        s = summarize(np.array([0, 0, 2, 2]))
        assert s.count == 2
        assert dict(zip(s.representatives.tolist(), s.sizes.tolist())) == {0: 2, 2: 2}

    def test_singletons(self):
        assert summarize(np.array([0, 1, 2])).count == 3

    def test_single_class(self):
        s = summarize(np.zeros(7, dtype=np.int64))
        assert s.count == 1
        assert s.sizes.tolist() == [7]

    def test_empty(self):
        assert summarize(np.zeros(0, dtype=np.int64)).count == 0

    def test_unnormalized_rejected(self):
        with pytest.raises(ValueError):
            summarize(np.array([1, 1]))  # class minimum is 0, not 1

    @settings(max_examples=40, deadline=None)
    @given(g=small_graphs())
    def test_count_matches_exact_metrics(self, g):
        s = summarize(rem_union_find(g))
        met = exact_metrics(g)
        assert s.count == met.component_count
        assert s.sizes.sum() == g.n
        assert np.array_equal(s.representatives, met.representatives)
