from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import graphs, random_graph
from spectralcut.extremal import build_G, canonical_partition, expected_quotient
from spectralcut.graph import complete, cycle, induced_subgraph
from spectralcut.harness import random_regular
from spectralcut.partitions import (
    PartitionError,
    TridiagonalRowSum,
    VertexPartition,
    equitable_lift_check,
    interlaces,
    is_equitable,
    multiset_contains,
    quotient_matrix,
    tridiagonal_eigenvalues,
    tridiagonal_reduce,
    tridiagonal_reduce_entries,
)
from spectralcut.spectra import Spectrum, adjacency_spectrum


def random_partition(rng, n, m):
    labels = np.concatenate([np.arange(m), rng.integers(0, m, n - m)])
    rng.shuffle(labels)
    return VertexPartition([np.flatnonzero(labels == j).tolist() for j in range(m)])


def random_row_sum_tridiagonal(rng, order, d):
    a, b, c = [], [], []
    for i in range(order):
        lo = rng.uniform(0, d) if i > 0 else 0.0
        hi = rng.uniform(0, d - lo) if i < order - 1 else 0.0
        if i > 0:
            c.append(lo)
        if i < order - 1:
            b.append(hi)
        a.append(d - lo - hi)
    return TridiagonalRowSum(tuple(a), tuple(b), tuple(c), d)


class TestVertexPartition:
    def test_parse_and_str(self):
        p = VertexPartition.parse("0,1,2;3,4;5")
        assert p.sizes() == [3, 2, 1]
        assert str(p) == "0,1,2;3,4;5"

    @pytest.mark.parametrize("text", ["0,1;;2", "0,a;1", ""])
    def test_parse_rejects(self, text):
        with pytest.raises(PartitionError):
            VertexPartition.parse(text)

    @pytest.mark.parametrize("blocks", [[[0, 1], [1, 2]], [[0, 1]], [[0, 1], [2, 5]], [[0, 1, 2], []]])
    def test_validate(self, blocks):
        with pytest.raises(PartitionError):
            VertexPartition(blocks).validate(3)

    def test_from_sizes(self):
        assert VertexPartition.from_sizes([2, 1]).blocks == ((0, 1), (2,))


class TestQuotient:
    def test_c4(self):
        q = quotient_matrix(cycle(4), VertexPartition.parse("0,2;1,3"))
        assert np.array_equal(q.to_array(), [[0, 2], [2, 0]])

    def test_single_block_of_regular_graph(self):
        g = random_regular(12, 5, 3)
        q = quotient_matrix(g, VertexPartition.from_sizes([12]))
        assert q.fractions() == [[Fraction(5)]]

    @pytest.mark.parametrize("d,t", [(5, 3), (7, 3), (7, 5), (9, 5), (11, 7)])
    def test_odd_extremal_quotient(self, d, t):
        q = quotient_matrix(build_G(d, t), canonical_partition(d, t))
        shown = [[d - t, t, 0, 0], [d + 2 - t, t - 3, 1, 0], [0, 1, t - 3, d + 2 - t], [0, 0, t, d - t]]
        assert q.fractions() == [[Fraction(x) for x in row] for row in shown]
        assert np.array_equal(q.to_array(), expected_quotient(d, t))

    def test_diagonal_counts_internal_edges(self):
        g = build_G(7, 4)
        p = canonical_partition(7, 4)
        q = quotient_matrix(g, p)
        for i, b in enumerate(p.blocks):
            assert q.entry(i, i) == Fraction(2 * induced_subgraph(g, b).edge_count, len(b))

    @given(graphs(min_n=2, max_n=10), st.integers(0, 2**32 - 1))
    def test_count_symmetry(self, g, seed):
        rng = np.random.default_rng(seed)
        p = random_partition(rng, g.n, int(rng.integers(1, g.n + 1)))
        q = quotient_matrix(g, p)
        for i in range(q.order):
            for j in range(q.order):
                assert q.entry(i, j) * len(p.blocks[i]) == q.entry(j, i) * len(p.blocks[j])
                assert q.entry(i, j) >= 0

    @pytest.mark.parametrize("n,d,seed", [(10, 3, 1), (16, 5, 2), (20, 6, 3)])
    def test_row_sums_regular(self, n, d, seed):
        g = random_regular(n, d, seed)
        p = random_partition(np.random.default_rng(seed), n, 4)
        assert quotient_matrix(g, p).row_sums() == [d] * 4

    def test_invalid_partition(self):
        with pytest.raises(PartitionError):
            quotient_matrix(cycle(4), VertexPartition.parse("0,1;2"))


class TestEquitable:
    def test_examples(self):
        assert is_equitable(build_G(5, 3), canonical_partition(5, 3))
        assert not is_equitable(cycle(5), VertexPartition.parse("0;1,2,3,4"))
        assert is_equitable(cycle(5), VertexPartition.discrete(5))

    @given(graphs(min_n=1, max_n=9), st.integers(0, 2**32 - 1))
    def test_matches_direct_count(self, g, seed):
        rng = np.random.default_rng(seed)
        p = random_partition(rng, g.n, int(rng.integers(1, g.n + 1)))
        direct = True
        for b in p.blocks:
            for c in p.blocks:
                counts = {sum(1 for w in c if g.has_edge(v, w)) for v in b}
                direct &= len(counts) == 1
        assert is_equitable(g, p) == direct

    def test_lift_examples(self):
        g = build_G(5, 3)
        assert equitable_lift_check(g, canonical_partition(5, 3))
        assert equitable_lift_check(complete(4), VertexPartition.discrete(4))
        c6 = VertexPartition.parse("0,3;1,2,4,5")
        assert is_equitable(cycle(6), c6)
        assert equitable_lift_check(cycle(6), c6)
        with pytest.raises(PartitionError):
            equitable_lift_check(cycle(5), VertexPartition.parse("0;1,2,3,4"))

    def test_multiset_contains(self):
        assert multiset_contains([2, 1, 1, -1], [1, 1])
        assert not multiset_contains([2, 1, -1], [1, 1])
        assert not multiset_contains([1], [1, 1])


class TestInterlacing:
    def test_examples(self):
        assert interlaces([3, 1, -1], [1, -1])
        assert not interlaces([2, 0, -2], [3])
        with pytest.raises(ValueError):
            interlaces([1, 0], [1, 0])

    def test_accepts_spectrum_objects(self):
        assert interlaces(Spectrum([0, 2, -2]), Spectrum([1, -1], descending=False))

    def test_random_quotients(self, rng):
        for _ in range(1000):
            n = int(rng.integers(2, 31))
            g = random_graph(rng, n, rng.uniform(0.05, 0.9))
            p = random_partition(rng, n, int(rng.integers(1, n)))
            assert interlaces(adjacency_spectrum(g), quotient_matrix(g, p).eigenvalues())


class TestTridiagonal:
    def test_worked_example(self):
        m = TridiagonalRowSum.from_matrix([[1, 2, 0], [1, 1, 1], [0, 2, 1]])
        assert m.d == 3
        red = tridiagonal_reduce(m)
        assert np.array_equal(red, [[0, 1], [1, 0]])
        assert np.allclose(tridiagonal_eigenvalues(m.to_array()).values, [3, 1, -1])
        assert np.allclose(tridiagonal_eigenvalues(red).values, [1, -1])

    def test_exact_entries(self):
        m = TridiagonalRowSum.from_matrix([[Fraction(1, 2), Fraction(5, 2)], [Fraction(1, 3), Fraction(8, 3)]])
        diag, sup, sub = tridiagonal_reduce_entries(m)
        assert diag == [Fraction(1, 6)] and sup == [] and sub == []

    def test_rejections(self):
        with pytest.raises(ValueError):
            tridiagonal_reduce(TridiagonalRowSum((3,), (), (), 3))
        with pytest.raises(ValueError):
            TridiagonalRowSum((1, 1), (1,), (1,), 3)
        with pytest.raises(ValueError):
            TridiagonalRowSum((4, 2), (-1,), (1,), 3)
        with pytest.raises(ValueError):
            TridiagonalRowSum.from_matrix([[1, 1, 1], [1, 1, 1], [1, 1, 1]])
        with pytest.raises(ValueError):
            tridiagonal_eigenvalues([[0, 1], [-1, 0]])

    def test_zero_off_diagonals(self):
        m = np.array([[2.0, 0.0, 0.0], [3.0, -1.0, 0.5], [0.0, 2.0, 1.0]])
        ours = tridiagonal_eigenvalues(m).values
        assert np.allclose(ours, sorted(np.linalg.eigvals(m).real, reverse=True), atol=1e-12)

    def test_spectrum_identity_random(self, rng):
        for _ in range(1000):
            order = int(rng.integers(3, 13))
            d = float(rng.uniform(0.5, 10))
            m = random_row_sum_tridiagonal(rng, order, d)
            full = np.sort(np.linalg.eigvals(m.to_array()).real)
            red = tridiagonal_eigenvalues(tridiagonal_reduce(m)).values
            assert multiset_contains(full, list(red) + [d], tol=1e-7)
