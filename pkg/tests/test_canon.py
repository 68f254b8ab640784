import random
from itertools import permutations

import networkx as nx
from hypothesis import given, settings
from hypothesis import strategies as st

from kssearch.canon import are_isomorphic, automorphisms_found, canonical_form, canonical_labeling, certificate
from kssearch.graph import Graph, all_labeled_graphs
from oracles import random_graph


def to_nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def test_k4_relabelings_agree():
    k4 = Graph.complete(4)
    assert len({canonical_form(k4.relabel(list(p)))[0] for p in permutations(range(4))}) == 1


def test_triangle_vs_path():
    assert canonical_form(Graph.complete(3))[0] != canonical_form(Graph.path(3))[0]


def test_all_c4_relabelings_give_one_form():
    c4 = Graph.cycle(4)
    assert len({canonical_form(c4.relabel(list(p)))[0] for p in permutations(range(4))}) == 1


def test_labeling_maps_graph_to_form():
    rng = random.Random(2)
    for _ in range(100):
        g = random_graph(rng, rng.randint(1, 12), 0.35)
        form, perm = canonical_form(g)
        assert g.relabel(perm) == form
        assert canonical_labeling(g) == perm


def test_class_counts_up_to_five():
    # 1, 2, 4, 11, 34 isomorphism classes
    for n, want in zip(range(1, 6), (1, 2, 4, 11, 34)):
        assert len({certificate(g) for g in all_labeled_graphs(n)}) == want


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 14), st.floats(0.1, 0.7), st.randoms(use_true_random=False))
def test_invariant_under_random_relabeling(n, p, rnd):
    g = random_graph(rnd, n, p)
    perm = list(range(n))
    rnd.shuffle(perm)
    assert certificate(g) == certificate(g.relabel(perm))


def test_agrees_with_networkx_isomorphism():
    rng = random.Random(7)
    for _ in range(300):
        n = rng.randint(5, 9)
        # sparse regular-ish graphs are where refinement alone is weakest
        g = random_graph(rng, n, 0.4)
        h = random_graph(rng, n, 0.4)
        if g.num_edges != h.num_edges:
            continue
        assert are_isomorphic(g, h) == nx.is_isomorphic(to_nx(g), to_nx(h))


def test_regular_graphs():
    # Petersen versus a different 3-regular graph on 10 vertices
    pet = Graph.from_edges(10, [(i, (i + 1) % 5) for i in range(5)] + [(i, i + 5) for i in range(5)]
                           + [(5 + i, 5 + (i + 2) % 5) for i in range(5)])
    prism = Graph.from_edges(10, [(i, (i + 1) % 5) for i in range(5)] + [(i, i + 5) for i in range(5)]
                             + [(5 + i, 5 + (i + 1) % 5) for i in range(5)])
    assert not are_isomorphic(pet, prism)
    rng = random.Random(0)
    perm = list(range(10))
    rng.shuffle(perm)
    assert are_isomorphic(pet, pet.relabel(perm))


def test_automorphisms_are_automorphisms():
    g = Graph.cycle(6)
    for a in automorphisms_found(g):
        assert g.relabel(a) == g
