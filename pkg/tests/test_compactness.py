import random
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import cycle, random_bipartite_multigraph
from konigcolor.compactness import (
    LazyGraph,
    MalformedNode,
    find_dead_node,
    find_prefix_path,
    is_tree_node,
    level_count,
    level_counts,
    path_to_coloring,
)
from konigcolor.core import BudgetExceeded, GraphError, check_proper

C6_CYCLIC = [(i, (i + 1) % 6) for i in range(6)]
C6_MATCHING_FIRST = [C6_CYCLIC[i] for i in (0, 2, 4, 1, 3, 5)]
K3 = [(0, 1), (1, 2), (2, 0)]


def nodes_by_product(edges, n, m):
    """Every level-m tree node, by filtering all n**m sequences."""
    out = []
    for seq in product(range(1, n + 1), repeat=m):
        ok = True
        for i in range(m):
            for j in range(i):
                if seq[i] == seq[j] and set(edges[i]) & set(edges[j]):
                    ok = False
        if ok:
            out.append(seq)
    return out


def extends_to_full(edges, n, sigma):
    full = len(edges)
    rest = full - len(sigma)
    return any(tuple(sigma) + tail in set(nodes_by_product(edges, n, full))
               for tail in product(range(1, n + 1), repeat=rest))


class TestTreeNodes:
    def test_root(self):
        assert is_tree_node(LazyGraph([], 1), ())

    def test_single_edge(self):
        assert is_tree_node(LazyGraph([(0, 1)], 1), (1,))

    def test_adjacent_same_color(self):
        assert not is_tree_node(LazyGraph([(0, 1), (1, 2)], 2), (1, 1))

    def test_color_out_of_range(self):
        with pytest.raises(MalformedNode):
            is_tree_node(LazyGraph([(0, 1)], 2), (3,))
        with pytest.raises(MalformedNode):
            is_tree_node(LazyGraph([(0, 1)], 2), (0,))

    @settings(max_examples=50, deadline=None)
    @given(st.lists(st.integers(1, 3), max_size=6))
    def test_prefix_closed(self, sigma):
        g = LazyGraph(C6_CYCLIC, 3)
        if is_tree_node(g, sigma):
            assert all(is_tree_node(g, sigma[:i]) for i in range(len(sigma)))


class TestLevels:
    def test_single_edge(self):
        assert level_count(LazyGraph([(0, 1)], 1), 1) == 1

    def test_c6_cyclic(self):
        g = LazyGraph(C6_CYCLIC, 2)
        assert level_count(g, 6) == len(nodes_by_product(C6_CYCLIC, 2, 6)) == 2
        assert level_counts(g, 6) == [len(nodes_by_product(C6_CYCLIC, 2, m)) for m in range(7)]

    def test_bipartite_levels_nonempty(self, rng):
        for _ in range(20):
            fg = random_bipartite_multigraph(rng, 10, 9, 3, simple=True)
            n = max(1, max((fg.degree(v) for v in fg.vertices), default=1))
            g = LazyGraph.from_graph(fg, n)
            counts = level_counts(g, fg.m)
            assert all(c >= 1 for c in counts)
            assert counts[-1] == len(nodes_by_product([fg.endpoints(e) for e in range(fg.m)], n, fg.m))

    def test_budget_refusal(self):
        g = LazyGraph([(2 * i, 2 * i + 1) for i in range(12)], 3)
        with pytest.raises(BudgetExceeded):
            level_count(g, 12, budget=1000)

    def test_depth_past_stream_end(self):
        with pytest.raises(IndexError):
            level_count(LazyGraph([(0, 1)], 1), 2)


class TestPaths:
    def test_c6_leftmost(self):
        assert find_prefix_path(LazyGraph(C6_CYCLIC, 2), 6) == (1, 2, 1, 2, 1, 2)
        assert min(nodes_by_product(C6_CYCLIC, 2, 6)) == (1, 2, 1, 2, 1, 2)

    def test_k3_has_no_two_color_path(self):
        assert nodes_by_product(K3, 2, 3) == []
        assert find_prefix_path(LazyGraph(K3, 2), 3) is None

    def test_empty_stream(self):
        assert find_prefix_path(LazyGraph([], 3), 0) == ()

    def test_leftmost_and_proper(self, rng):
        for _ in range(20):
            fg = random_bipartite_multigraph(rng, 10, 8, 3, simple=True)
            n = max(1, max(fg.degree(v) for v in fg.vertices))
            g = LazyGraph.from_graph(fg, n)
            sigma = find_prefix_path(g, fg.m)
            assert sigma is not None
            assert sigma == min(nodes_by_product([fg.endpoints(e) for e in range(fg.m)], n, fg.m))
            sub, col = path_to_coloring(g, sigma)
            assert check_proper(sub, col)[0]


class TestDeadNodes:
    def test_c6_matching_first(self):
        g = LazyGraph(C6_MATCHING_FIRST, 2)
        dead = find_dead_node(g)
        assert dead == (1, 1, 2)
        assert is_tree_node(g, dead)
        assert not extends_to_full(C6_MATCHING_FIRST, 2, dead)
        assert extends_to_full(C6_MATCHING_FIRST, 2, dead[:2])

    def test_single_edge(self):
        assert find_dead_node(LazyGraph([(0, 1)], 1)) is None

    def test_perfect_matching(self):
        assert find_dead_node(LazyGraph([(0, 1), (2, 3), (4, 5)], 1)) is None

    def test_k3_root_is_dead(self):
        assert find_dead_node(LazyGraph(K3, 2)) == ()


class TestLazyGraph:
    def test_infinite_stream_prefix(self):
        # the infinite ladder of disjoint edges 2i - 2i+1
        g = LazyGraph.from_adjacency(lambda v, w: v % 2 == 0 and w == v + 1, 1, lambda v: v + 1)
        assert g.prefix(3) == [(0, 1), (2, 3), (4, 5)]
        assert g.length(limit=50) is None
        assert find_prefix_path(g, 10) == (1,) * 10

    def test_bound_fn_checked(self):
        g = LazyGraph([(0, 5)], 1, bound_fn=lambda v: v + 1)
        with pytest.raises(GraphError):
            g.prefix(1)

    def test_repeated_edge_rejected(self):
        with pytest.raises(GraphError):
            LazyGraph([(0, 1), (1, 0)], 2).prefix(2)

    def test_finite_stream_reports_end(self):
        g = LazyGraph.from_graph(cycle(6), 2)
        assert g.length() == 6 and g.length(limit=10) == 6

    @settings(max_examples=25, deadline=None)
    @given(st.integers(0, 10**6))
    def test_konig_guarantee(self, seed):
        rng = random.Random(seed)
        fg = random_bipartite_multigraph(rng, 12, 12, 3, simple=True)
        n = rng.randint(max(1, max(fg.degree(v) for v in fg.vertices)), 3)
        order = list(range(fg.m))
        rng.shuffle(order)
        g = LazyGraph.from_graph(fg, n, order)
        assert all(c >= 1 for c in level_counts(g, fg.m))
        assert find_prefix_path(g, fg.m) is not None
