import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from mixclock import (BipartiteGraph, Matching, PreconditionError, VertexCover, is_vertex_cover,
                      max_matching, min_vertex_cover)

from conftest import EXAMPLE_EDGES, random_small_graph
from oracles import brute_max_matching, brute_min_cover

small_graphs = st.builds(
    lambda edges: BipartiteGraph.from_edges(edges, 6, 6),
    st.sets(st.tuples(st.integers(0, 5), st.integers(0, 5)), max_size=36),
)


def assert_matching(g, m):
    ts = [t for t, _ in m.pairs]
    os_ = [o for _, o in m.pairs]
    assert len(set(ts)) == len(ts)
    assert len(set(os_)) == len(os_)
    assert m.pairs <= g.edges


def test_example_matching_size(example_graph):
    m = max_matching(example_graph)
    assert len(m) == 3
    assert_matching(example_graph, m)


def test_example_cover_from_given_matching(example_graph):
    m = Matching(frozenset({(1, 2), (2, 1), (3, 3)}))
    c = min_vertex_cover(example_graph, m)
    assert c.thread_members == {2}
    assert c.object_members == {2, 3}


def test_example_cover_from_own_matching(example_graph):
    c = min_vertex_cover(example_graph, max_matching(example_graph))
    assert len(c) == 3 and is_vertex_cover(example_graph, c)


def test_empty_graph():
    g = BipartiteGraph()
    m = max_matching(g)
    assert len(m) == 0
    assert len(min_vertex_cover(g, m)) == 0


def test_isolated_vertices_never_in_cover():
    g = BipartiteGraph.from_edges([(0, 0)], 4, 4)
    c = min_vertex_cover(g, max_matching(g))
    assert len(c) == 1
    assert c.thread_members <= {0} and c.object_members <= {0}


def test_is_vertex_cover_examples(example_graph):
    assert is_vertex_cover(example_graph, VertexCover(frozenset({2}), frozenset({2, 3})))
    assert not is_vertex_cover(example_graph, VertexCover(frozenset({2}), frozenset({2})))
    assert is_vertex_cover(example_graph, VertexCover(example_graph.threads, frozenset()))


def test_cover_rejects_non_matching(example_graph):
    with pytest.raises(PreconditionError):
        min_vertex_cover(example_graph, Matching(frozenset({(1, 2), (1, 3)})))
    with pytest.raises(PreconditionError):
        min_vertex_cover(example_graph, Matching(frozenset({(1, 1)})))


def test_graph_rejects_foreign_endpoint():
    with pytest.raises(PreconditionError):
        BipartiteGraph(frozenset({0}), frozenset({0}), frozenset({(0, 1)}))


def test_duplicate_edges_collapse():
    g = BipartiteGraph.from_edges([(0, 1), (0, 1), (2, 1)])
    assert g.edges == {(0, 1), (2, 1)}


def test_matching_is_deterministic(example_graph):
    assert max_matching(example_graph) == max_matching(BipartiteGraph.from_edges(reversed(EXAMPLE_EDGES)))


def test_brute_force_agreement_randomized(rng):
    for _ in range(500):
        g = random_small_graph(rng)
        m = max_matching(g)
        assert_matching(g, m)
        assert len(m) == brute_max_matching(g.edges)
        c = min_vertex_cover(g, m)
        assert len(c) == brute_min_cover(g.edges) == len(m)
        assert is_vertex_cover(g, c)


@settings(max_examples=200, deadline=None)
@given(small_graphs)
def test_konig_properties(g):
    m = max_matching(g)
    assert_matching(g, m)
    c = min_vertex_cover(g, m)
    assert len(c) == len(m)
    assert is_vertex_cover(g, c)
    assert len(c) <= min(len(g.active_threads()), len(g.active_objects()))


def test_larger_graph_cover_is_valid():
    rng = np.random.default_rng(3)
    for _ in range(20):
        g = random_small_graph(rng, max_side=40)
        m = max_matching(g)
        c = min_vertex_cover(g, m)
        assert is_vertex_cover(g, c) and len(c) == len(m)
