import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from magicdist import graph as gr
from magicdist.automorphism import canonical_form
from magicdist.graph import GraphError


@st.composite
def graphs(draw, max_n=12):
    n = draw(st.integers(1, max_n))
    pairs = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True) if pairs else st.just([]))
    return gr.from_edge_list(n, chosen)


def to_nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from((u - 1, v - 1) for u, v in g.edges())
    return h


@settings(max_examples=200, deadline=None)
@given(graphs())
def test_graph6_round_trip_and_matches_networkx(g):
    s = gr.to_graph6(g)
    assert gr.parse_graph6(s) == g
    assert s == nx.to_graph6_bytes(to_nx(g), header=False).decode().strip()


def test_graph6_large_order_prefix():
    g = gr.path(70)
    s = gr.to_graph6(g)
    assert s.startswith("~")
    assert gr.parse_graph6(s) == g
    assert s == nx.to_graph6_bytes(nx.path_graph(70), header=False).decode().strip()


def test_graph6_known_strings():
    assert gr.to_graph6(gr.path(3)) == "Bg"
    assert gr.to_graph6(gr.complete(3)) == "Bw"
    assert gr.to_graph6(gr.cycle(4)) == "Cl"
    assert gr.parse_graph6(">>graph6<<Cl") == gr.cycle(4)


@pytest.mark.parametrize("bad", ["", "Bgg", "B", "C" + chr(200) + "x", "Bh"])
def test_graph6_rejects_malformed(bad):
    with pytest.raises(GraphError):
        gr.parse_graph6(bad)


def test_edge_list_text_round_trip():
    g = gr.fig_ndm()
    text = gr.to_edge_list_text(g)
    assert text.splitlines()[0] == "11 28"
    assert gr.parse_edge_list_text(text) == g


def test_edge_list_errors():
    with pytest.raises(GraphError):
        gr.from_edge_list(3, [(1, 1)])
    with pytest.raises(GraphError):
        gr.from_edge_list(3, [(1, 4)])
    assert gr.from_edge_list(3, [(1, 2), (2, 1)]).m == 1


def test_from_adjacency_rejects_asymmetric():
    with pytest.raises(GraphError):
        gr.from_adjacency(np.array([[0, 1], [0, 0]]))


def test_basic_families():
    assert gr.path(4).degrees() == [1, 2, 2, 1]
    assert gr.cycle(5).is_regular()
    assert gr.complete(5).m == 10
    s = gr.star(3)
    assert s.n == 4 and s.degree(1) == 3
    assert gr.edgeless(3).m == 0


@pytest.mark.parametrize("n", [4, 6, 8, 10])
def test_complete_minus_matching(n):
    g = gr.complete_minus_matching(n)
    assert g.is_regular() and g.degree(1) == n - 2
    assert not g.has_edge(1, 1 + n // 2)


@pytest.mark.parametrize("n", [4, 6, 8, 10, 12])
def test_singular_even_is_a_relabelled_complete_minus_matching(n):
    g = gr.singular_even(n)
    assert not g.has_edge(1, n) and g.has_edge(1, 2)
    assert canonical_form(g) == canonical_form(gr.complete_minus_matching(n))


@pytest.mark.parametrize("family,arg", [("complete_minus_matching", 5), ("singular_even", 3), ("singular_even", 2)])
def test_odd_or_tiny_orders_rejected(family, arg):
    with pytest.raises(GraphError):
        gr.construct(family, arg)


def test_cone_cover():
    g = gr.cone_cover(gr.cycle(4))
    assert g.n == 5 and g.degree(5) == 4 and g.m == 8


def test_disjoint_union_components():
    g = gr.disjoint_union(gr.path(3), gr.cycle(4))
    assert g.n == 7 and g.m == 6
    assert [len(c) for c in g.components()] == [3, 4]
    assert not g.is_connected()


def test_fig_ndm_shape():
    g = gr.fig_ndm()
    assert (g.n, g.m) == (11, 28)
    assert g.degrees() == [5, 5, 4, 5, 5, 5, 7, 5, 5, 5, 5]
    assert g.is_connected()


def test_induced_and_relabel():
    g = gr.cycle(5)
    assert gr.to_graph6(g.induced([1, 2, 3])) == gr.to_graph6(gr.path(3))
    perm = [3, 1, 5, 2, 4]
    h = g.relabel(perm)
    assert h.m == g.m
    assert all(h.has_edge(perm[u - 1], perm[v - 1]) for u, v in g.edges())


def test_unknown_family():
    with pytest.raises(GraphError):
        gr.construct("petersen", 10)
