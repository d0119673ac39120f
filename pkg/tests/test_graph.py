import networkx as nx
import numpy as np
import pytest
from hypothesis import given

from conftest import graphs
from spectralcut.extremal import build_G, build_H
from spectralcut.graph import (
    Graph,
    GraphError,
    complement,
    complete,
    components,
    cycle,
    degree_sequence,
    disjoint_union,
    edge_boundary,
    empty,
    induced_subgraph,
    is_regular,
    join,
    matching,
    matching_complement,
    path,
    relabel,
)
from spectralcut.harness import random_regular
from spectralcut.spectra import adjacency_spectrum


def _nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def assert_simple(g):
    a = g.adj
    assert np.array_equal(a, a.T)
    assert not np.any(np.diag(a))


class TestConstruction:
    def test_rejects_loops_and_duplicates(self):
        with pytest.raises(GraphError):
            Graph.from_edges(3, [(0, 0)])
        with pytest.raises(GraphError):
            Graph.from_edges(3, [(0, 1), (1, 0)])
        with pytest.raises(GraphError):
            Graph.from_edges(3, [(0, 3)])

    def test_rejects_asymmetric(self):
        a = np.zeros((3, 3), dtype=bool)
        a[0, 1] = True
        with pytest.raises(GraphError):
            Graph(a)

    def test_immutable(self):
        g = cycle(4)
        with pytest.raises(ValueError):
            g.adj[0, 2] = True

    @pytest.mark.parametrize(
        "g",
        [empty(3), complete(5), cycle(6), path(4), matching(3), matching_complement(3),
         build_H(5, 3), build_H(6, 4), build_G(7, 5)],
    )
    def test_constructors_are_simple(self, g):
        assert_simple(g)

    def test_bad_sizes(self):
        for f, arg in [(cycle, 2), (complete, 0), (matching, 0), (path, 0), (empty, -1)]:
            with pytest.raises(GraphError):
                f(arg)


class TestComplement:
    def test_complete(self):
        assert complement(complete(4)).edge_count == 0

    def test_c5_self_complementary(self):
        c = complement(cycle(5))
        assert degree_sequence(c) == [2] * 5
        assert nx.is_isomorphic(_nx(c), _nx(cycle(5)))

    @pytest.mark.parametrize("m", [1, 2, 3, 5])
    def test_cocktail_party_degree(self, m):
        g = matching_complement(m)
        assert g.n == 2 * m
        assert is_regular(g) == 2 * m - 2
        for i in range(m):
            assert not g.has_edge(2 * i, 2 * i + 1)

    def test_matching_complement_small(self):
        assert matching_complement(1).edge_count == 0
        assert nx.is_isomorphic(_nx(matching_complement(2)), _nx(cycle(4)))

    def test_matching_complement_spectrum(self):
        ev = adjacency_spectrum(matching_complement(3)).values
        assert np.allclose(ev, [4, 0, 0, 0, -2, -2], atol=1e-9)

    @given(graphs())
    def test_involution(self, g):
        assert complement(complement(g)) == g

    @pytest.mark.parametrize("n,d,seed", [(8, 3, 1), (10, 4, 2), (12, 5, 3), (11, 6, 4), (9, 2, 5)])
    def test_regular_complement_spectrum(self, n, d, seed):
        g = random_regular(n, d, seed)
        lam = adjacency_spectrum(g).values
        mu = adjacency_spectrum(complement(g)).values
        expected = sorted([n - 1 - d] + [-1 - x for x in lam[1:]], reverse=True)
        assert np.allclose(mu, expected, atol=1e-8)


class TestJoinUnion:
    def test_wheel(self):
        w = join(complete(1), cycle(4))
        assert w.n == 5 and w.edge_count == 8

    def test_h53_by_join(self):
        h = join(matching_complement(2), complement(cycle(3)))
        assert h.n == 7
        assert h == build_H(5, 3)
        assert sorted(degree_sequence(h), reverse=True) == [5, 5, 5, 5, 4, 4, 4]

    @given(graphs(max_n=6), graphs(max_n=6))
    def test_join_laws(self, g, h):
        j = join(g, h)
        assert j.n == g.n + h.n
        assert j.edge_count == g.edge_count + h.edge_count + g.n * h.n
        assert np.array_equal(j.degrees()[: g.n], g.degrees() + h.n)
        assert np.array_equal(j.degrees()[g.n :], h.degrees() + g.n)
        assert induced_subgraph(j, range(g.n)) == g
        assert induced_subgraph(j, range(g.n, g.n + h.n)) == h

    def test_union_of_triangles(self):
        u = disjoint_union(complete(3), complete(3))
        assert (u.n, u.edge_count, len(components(u))) == (6, 6, 2)

    @given(graphs(max_n=6), graphs(max_n=6))
    def test_union_spectrum(self, g, h):
        u = adjacency_spectrum(disjoint_union(g, h)).values
        both = np.concatenate([adjacency_spectrum(g).values, adjacency_spectrum(h).values])
        assert np.allclose(u, -np.sort(-both), atol=1e-9)


class TestMeasurements:
    def test_induced(self):
        assert induced_subgraph(complete(5), [1, 3, 4]) == complete(3)
        assert induced_subgraph(cycle(5), [0, 1, 2]) == path(3)
        with pytest.raises(GraphError):
            induced_subgraph(cycle(5), [])

    def test_boundary(self):
        assert edge_boundary(complete(4), {0, 1}, {2, 3}).size == 4
        assert edge_boundary(cycle(6), {0, 1, 2}, {3, 4, 5}).size == 2
        with pytest.raises(GraphError):
            edge_boundary(cycle(6), {0, 1}, {1, 2})

    @pytest.mark.parametrize("d,t", [(5, 3), (6, 4), (9, 5)])
    def test_boundary_between_copies(self, d, t):
        g = build_G(d, t)
        assert edge_boundary(g, range(g.n // 2)).size == t

    def test_regularity(self):
        assert is_regular(complete(4)) == 3
        assert is_regular(path(3)) is None
        assert is_regular(build_G(5, 3)) == 5

    @given(graphs(max_n=7))
    def test_relabel_preserves_structure(self, g):
        order = list(range(g.n))[::-1]
        h = relabel(g, order)
        assert h.edge_count == g.edge_count
        assert sorted(degree_sequence(h)) == sorted(degree_sequence(g))
        assert relabel(h, order) == g

    @given(graphs(max_n=8))
    def test_components_match_networkx(self, g):
        ours = sorted(map(tuple, components(g)))
        theirs = sorted(tuple(sorted(c)) for c in nx.connected_components(_nx(g)))
        assert ours == theirs
