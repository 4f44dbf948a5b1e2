import random
from collections import Counter

import pytest
from hypothesis import given, strategies as st

from causal_layout.temporal import TemporalGraph, aggregate, shuffle_timestamps

edge_lists = st.lists(
    st.tuples(st.sampled_from("abcdef"), st.sampled_from("abcdef"), st.integers(0, 50)),
    max_size=40,
)


def test_aggregate_counts_activations():
    g = TemporalGraph([("a", "b", 1), ("a", "b", 5), ("b", "c", 2)])
    agg = aggregate(g)
    assert agg.weights == {("a", "b"): 2, ("b", "c"): 1}
    assert agg.vertices == {"a", "b", "c"}


def test_aggregate_of_edgeless_graph_keeps_vertices():
    agg = aggregate(TemporalGraph([], vertices=["x", "y"]))
    assert agg.weights == {}
    assert agg.vertices == {"x", "y"}


def test_toy_graph_has_five_vertices(toy_edges):
    g = TemporalGraph(toy_edges)
    assert len(g) == 8
    assert len(aggregate(g).vertices) == 5


def test_duplicate_edges_kept_with_multiplicity():
    g = TemporalGraph([("a", "b", 1), ("a", "b", 1)])
    assert len(g) == 2
    assert aggregate(g).weights == {("a", "b"): 2}


@pytest.mark.parametrize("t", [1.5, "3", -1, True])
def test_rejects_bad_timestamps(t):
    with pytest.raises((ValueError, TypeError)):
        TemporalGraph([("a", "b", t)])


def test_graphs_compare_as_edge_multisets():
    a = TemporalGraph([("a", "b", 1), ("b", "c", 2)])
    b = TemporalGraph([("b", "c", 2), ("a", "b", 1)])
    assert a == b
    assert a != TemporalGraph([("a", "b", 1)])


def test_arrays_are_read_only():
    src, _, _ = TemporalGraph([("a", "b", 1)]).arrays
    with pytest.raises(ValueError):
        src[0] = 3


def test_undirected_edges_drop_loops_and_orientation():
    agg = aggregate(TemporalGraph([("b", "a", 1), ("a", "b", 2), ("c", "c", 3)]))
    assert agg.undirected_edges() == [("a", "b")]


def test_shuffle_single_edge_is_identity():
    g = TemporalGraph([("a", "b", 7)])
    assert shuffle_timestamps(g, 3) == g


def test_shuffle_is_seeded():
    rng = random.Random(0)
    g = TemporalGraph([(rng.choice("abcd"), rng.choice("abcd"), t) for t in range(30)])
    assert shuffle_timestamps(g, 1) == shuffle_timestamps(g, 1)
    assert shuffle_timestamps(g, 1) != shuffle_timestamps(g, 2)


@given(edge_lists, st.integers(0, 2**32 - 1))
def test_shuffle_preserves_aggregate_and_timestamps(edges, seed):
    g = TemporalGraph(edges)
    h = shuffle_timestamps(g, seed)
    assert aggregate(h) == aggregate(g)
    assert sorted(t for *_, t in h.edges) == sorted(t for *_, t in g.edges)
    assert h.vertices == g.vertices


@given(edge_lists)
def test_aggregate_total_equals_edge_count(edges):
    agg = aggregate(TemporalGraph(edges))
    assert agg.weights == dict(Counter((v, w) for v, w, _ in edges))
