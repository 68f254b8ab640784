import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kssearch.coloring import (
    TYPE_BOUND_DEFAULT,
    FixedColor,
    VertexType,
    count_010_colorings,
    enumerate_010_colorings,
    find_010_coloring,
    fixed_color,
    fixed_colors,
    is_010_colorable,
    is_valid_coloring,
    type_bound_lookup,
    type_of,
)
from kssearch.graph import Graph, all_labeled_graphs, double_at_vertex
from oracles import brute_colorable, brute_colorings, random_graph


def test_triangle():
    t = Graph.complete(3)
    assert is_010_colorable(t)
    assert sorted(enumerate_010_colorings(t)) == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]
    assert type_of(t, (0, 1, 2)).tuples == {(1, 0, 0), (0, 1, 0), (0, 0, 1)}
    assert all(fixed_color(t, v) == FixedColor.NOT_FIXED for v in range(3))


def test_single_vertex():
    g = Graph.empty(1)
    assert sorted(enumerate_010_colorings(g)) == [(0,), (1,)]
    assert fixed_color(g, 0) == FixedColor.NOT_FIXED


def test_k4():
    k4 = Graph.complete(4)
    assert not is_010_colorable(k4)
    assert list(enumerate_010_colorings(k4)) == []
    assert fixed_color(k4, 2) == FixedColor.UNCOLORABLE
    assert len(type_of(k4, (0, 1))) == 0
    assert fixed_colors(k4) == {}


def test_edge_type():
    assert type_of(Graph.complete(2), (0, 1)).tuples == {(0, 0), (1, 0), (0, 1)}


def test_aow17_not_colorable(aow17):
    assert not is_010_colorable(aow17)


def test_forced_colors():
    t = Graph.complete(3)
    c = find_010_coloring(t, {0: 0, 1: 0})
    assert c == (0, 0, 1)
    assert find_010_coloring(t, {0: 1, 1: 1}) is None


def test_fixed_color_range():
    with pytest.raises(ValueError):
        fixed_color(Graph.complete(3), 5)


def test_fixed_colors_pendant_triangles():
    # two triangles sharing vertex 0
    g = Graph.from_edges(5, [(0, 1), (1, 2), (0, 2), (0, 3), (3, 4), (0, 4)])
    # brute force decides which vertices are fixed
    cols = brute_colorings(g)
    expect = {v: next(iter({c[v] for c in cols})) for v in range(5) if len({c[v] for c in cols}) == 1}
    assert fixed_colors(g) == expect


def test_type_errors():
    t = Graph.complete(3)
    with pytest.raises(ValueError):
        type_of(t, (0, 0))
    with pytest.raises(ValueError):
        type_of(t, ())
    with pytest.raises(ValueError):
        type_of(t, (0, 1, 2, 0))
    with pytest.raises(ValueError):
        type_of(t, (7,))


def test_type_bound_table():
    assert type_bound_lookup(VertexType.of([(0,)])) == 15
    assert type_bound_lookup(VertexType.of([(0, 1), (1, 0)])) == 16
    assert type_bound_lookup(VertexType.of([(1,)])) == 17
    assert type_bound_lookup(VertexType.of([(0, 0), (1, 0), (0, 1)])) == 10
    assert type_bound_lookup(VertexType.of([(1, 1)])) == TYPE_BOUND_DEFAULT
    for bad in ([(0,), (1,)], [(0, 0), (0, 1), (1, 0), (1, 1)], [(0, 0, 0)], []):
        with pytest.raises(ValueError):
            type_bound_lookup(VertexType.of(bad) if bad else VertexType(1, frozenset()))


def test_exhaustive_up_to_six():
    for n in range(1, 7):
        for g in all_labeled_graphs(n):
            assert is_010_colorable(g) == brute_colorable(g)


def test_enumeration_matches_brute_force():
    rng = random.Random(5)
    for _ in range(300):
        g = random_graph(rng, rng.randint(1, 9), rng.uniform(0.2, 0.7))
        got = list(enumerate_010_colorings(g))
        assert len(got) == len(set(got))
        assert set(got) == brute_colorings(g)
        assert count_010_colorings(g) == len(got)
        assert all(is_valid_coloring(g, c) for c in got)
        assert got == list(enumerate_010_colorings(g))


def test_found_coloring_is_valid():
    rng = random.Random(9)
    for _ in range(500):
        g = random_graph(rng, rng.randint(3, 14), rng.uniform(0.2, 0.6))
        c = find_010_coloring(g)
        if c is not None:
            assert is_valid_coloring(g, c)


@settings(max_examples=80, deadline=None)
@given(st.integers(2, 8), st.floats(0.2, 0.8), st.randoms(use_true_random=False))
def test_projection_coherence(n, p, rnd):
    g = random_graph(rnd, n, p)
    u, v = rnd.sample(range(n), 2)
    one = type_of(g, (u,)).tuples
    two = type_of(g, (u, v)).tuples
    assert one == {(t[0],) for t in two}


def test_low_degree_vertex_reduction():
    # a vertex of degree <= 2 never blocks extending a coloring of the rest
    for n in range(2, 7):
        for g in all_labeled_graphs(n):
            degs = g.degrees()
            for v in range(n):
                if degs[v] <= 2 and is_010_colorable(g.remove_vertex(v)):
                    assert is_010_colorable(g)


def test_doubling_property_small():
    for n in range(1, 5):
        for g in all_labeled_graphs(n):
            cols = brute_colorings(g)
            for v in range(n):
                assert is_010_colorable(double_at_vertex(g, v)) == any(c[v] == 0 for c in cols)
