import networkx as nx
import pytest
from hypothesis import given

from conftest import graphs
from spectralcut.extremal import build_G
from spectralcut.graph import GraphError, cycle
from spectralcut.io import from_edgelist, from_graph6, graph_id, read_graph, read_graph6_lines, to_edgelist


def test_edgelist_format():
    assert to_edgelist(cycle(3)) == "3 3\n0 1\n0 2\n1 2\n"


@given(graphs(max_n=12))
def test_edgelist_round_trip(g):
    assert from_edgelist(to_edgelist(g)) == g


@pytest.mark.parametrize(
    "text",
    ["3 1\n0 0\n", "3 2\n0 1\n1 0\n", "3 1\n0 3\n", "3 2\n0 1\n", "x y\n", "3 1\n0\n", ""],
)
def test_edgelist_rejects(text):
    with pytest.raises(GraphError):
        from_edgelist(text)


def test_edgelist_comments():
    assert from_edgelist("# c4\n4 4\n0 1\n1 2\n\n2 3 # last two\n0 3\n") == cycle(4)


def _to_nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


@given(graphs(max_n=12))
def test_graph6_against_networkx(g):
    s = nx.to_graph6_bytes(_to_nx(g), header=False).strip()
    assert from_graph6(s) == g


def test_graph6_large_n_and_header():
    h = nx.gnp_random_graph(70, 0.2, seed=4)
    s = nx.to_graph6_bytes(h, header=True).decode()
    g = from_graph6(s)
    assert g.n == 70 and g.edge_count == h.number_of_edges()
    assert all(g.has_edge(u, v) for u, v in h.edges())


def test_graph6_known_strings():
    # "Bw" is the triangle, "C~" is K4
    assert from_graph6("Bw").edge_count == 3
    assert from_graph6("C~").edge_count == 6


@pytest.mark.parametrize("bad", ["", "C", ":Fa@x^", "C\x7f", "B~~"])
def test_graph6_rejects(bad):
    with pytest.raises(GraphError):
        from_graph6(bad)


def test_read_graph_dispatch_and_lines():
    g = build_G(5, 3)
    assert read_graph(to_edgelist(g)) == g
    s = nx.to_graph6_bytes(_to_nx(g), header=False).decode()
    assert read_graph(s) == g
    assert len(list(read_graph6_lines(s + s))) == 2


def test_graph_id_stable():
    assert graph_id(cycle(5)) == graph_id(cycle(5))
    assert graph_id(cycle(5)) != graph_id(cycle(6))
    assert len(graph_id(cycle(5))) == 16
