"""Simple undirected graphs on vertices 0..n-1 and the small graph algebra
(complement, join, disjoint union) used to assemble the extremal families.

Graphs are immutable: the adjacency matrix is a read-only boolean array and
every operation returns a new Graph.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np


class GraphError(ValueError):
    """Invalid graph data or invalid arguments to a graph operation."""


class Graph:
    """Simple graph stored as a dense symmetric boolean adjacency matrix."""

    __slots__ = ("_adj", "n", "edge_count")

    def __init__(self, adj):
        a = np.array(adj, dtype=bool, copy=True)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise GraphError(f"adjacency must be square, got shape {a.shape}")
        if np.any(np.diag(a)):
            raise GraphError("loops are not allowed")
        if not np.array_equal(a, a.T):
            raise GraphError("adjacency must be symmetric")
        a.setflags(write=False)
        self._adj = a
        self.n = a.shape[0]
        self.edge_count = int(np.count_nonzero(a)) // 2

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        """Build from an edge iterable; rejects loops, duplicates and bad labels."""
        if n < 0:
            raise GraphError("vertex count must be non-negative")
        a = np.zeros((n, n), dtype=bool)
        for u, v in edges:
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            if a[u, v]:
                raise GraphError(f"duplicate edge ({min(u, v)}, {max(u, v)})")
            a[u, v] = a[v, u] = True
        return cls(a)

    @property
    def adj(self) -> np.ndarray:
        return self._adj

    def adjacency_matrix(self, dtype=float) -> np.ndarray:
        return self._adj.astype(dtype)

    def laplacian_matrix(self, dtype=float) -> np.ndarray:
        a = self._adj.astype(dtype)
        return np.diag(a.sum(axis=1)) - a

    def edges(self) -> list[tuple[int, int]]:
        """Edges as (u, v) with u < v, lexicographically sorted."""
        iu, iv = np.nonzero(np.triu(self._adj, 1))
        return list(zip(iu.tolist(), iv.tolist()))

    def degrees(self) -> np.ndarray:
        return self._adj.sum(axis=1).astype(np.int64)

    def neighbors(self, v: int) -> list[int]:
        return np.flatnonzero(self._adj[v]).tolist()

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self._adj[u, v])

    def is_connected(self) -> bool:
        return len(components(self)) <= 1

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and np.array_equal(self._adj, other._adj)

    def __hash__(self) -> int:
        return hash((self.n, np.packbits(self._adj).tobytes()))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edge_count})"


@dataclass(frozen=True)
class EdgeBoundary:
    """The edge set [S, T] between two disjoint vertex sets, by count."""

    S: frozenset
    T: frozenset
    size: int


def _vertex_set(g: Graph, s: Iterable[int], name: str) -> list[int]:
    vs = sorted({int(v) for v in s})
    if vs and (vs[0] < 0 or vs[-1] >= g.n):
        raise GraphError(f"{name} contains vertices outside 0..{g.n - 1}")
    return vs


# -- constructors -----------------------------------------------------------


def empty(n: int) -> Graph:
    if n < 0:
        raise GraphError("vertex count must be non-negative")
    return Graph(np.zeros((n, n), dtype=bool))


def complete(n: int) -> Graph:
    """K_n."""
    if n < 1:
        raise GraphError("complete graph needs n >= 1")
    return Graph(~np.eye(n, dtype=bool))


def cycle(n: int) -> Graph:
    """C_n with edges i ~ i+1 (mod n)."""
    if n < 3:
        raise GraphError("cycle needs n >= 3")
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def path(n: int) -> Graph:
    if n < 1:
        raise GraphError("path needs n >= 1")
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def matching(m: int) -> Graph:
    """m disjoint copies of K_2, pairing 2i with 2i+1."""
    if m < 1:
        raise GraphError("matching needs m >= 1")
    return Graph.from_edges(2 * m, ((2 * i, 2 * i + 1) for i in range(m)))


def matching_complement(m: int) -> Graph:
    """Complement of m K_2 (the cocktail-party graph): 2m vertices, (2m-2)-regular."""
    return complement(matching(m))


def complement(g: Graph) -> Graph:
    a = ~g.adj
    np.fill_diagonal(a, False)
    return Graph(a)


def disjoint_union(g: Graph, h: Graph) -> Graph:
    """g followed by h, with h's labels shifted by g.n."""
    a = np.zeros((g.n + h.n, g.n + h.n), dtype=bool)
    a[: g.n, : g.n] = g.adj
    a[g.n :, g.n :] = h.adj
    return Graph(a)


def join(g: Graph, h: Graph) -> Graph:
    """Disjoint union plus every edge between the two parts."""
    a = np.array(disjoint_union(g, h).adj)
    a[: g.n, g.n :] = True
    a[g.n :, : g.n] = True
    return Graph(a)


def induced_subgraph(g: Graph, s: Iterable[int]) -> Graph:
    """G[S], relabelled 0..|S|-1 in increasing label order."""
    vs = _vertex_set(g, s, "s")
    if not vs:
        raise GraphError("induced subgraph needs a non-empty vertex set")
    return Graph(g.adj[np.ix_(vs, vs)])


# -- measurements -----------------------------------------------------------


def edge_boundary(g: Graph, s: Iterable[int], t: Optional[Iterable[int]] = None) -> EdgeBoundary:
    """Count the edges joining S and T (T defaults to the complement of S)."""
    ss = _vertex_set(g, s, "s")
    if t is None:
        sset = set(ss)
        ts = [v for v in range(g.n) if v not in sset]
    else:
        ts = _vertex_set(g, t, "t")
        if set(ss) & set(ts):
            raise GraphError("edge boundary needs disjoint vertex sets")
    size = int(np.count_nonzero(g.adj[np.ix_(ss, ts)])) if ss and ts else 0
    return EdgeBoundary(frozenset(ss), frozenset(ts), size)


def degree_sequence(g: Graph) -> list[int]:
    return g.degrees().tolist()


def is_regular(g: Graph) -> Optional[int]:
    """The common degree if g is regular, else None."""
    if g.n == 0:
        return 0
    deg = g.degrees()
    return int(deg[0]) if np.all(deg == deg[0]) else None


def min_degree(g: Graph) -> int:
    return int(g.degrees().min()) if g.n else 0


def components(g: Graph) -> list[list[int]]:
    """Connected components, each sorted, ordered by smallest vertex."""
    seen = np.zeros(g.n, dtype=bool)
    out = []
    for root in range(g.n):
        if seen[root]:
            continue
        comp = [root]
        seen[root] = True
        stack = [root]
        while stack:
            u = stack.pop()
            for w in np.flatnonzero(g.adj[u] & ~seen):
                seen[w] = True
                comp.append(int(w))
                stack.append(int(w))
        out.append(sorted(comp))
    return out


def relabel(g: Graph, order: Sequence[int]) -> Graph:
    """Graph whose vertex i is vertex order[i] of g."""
    order = list(order)
    if sorted(order) != list(range(g.n)):
        raise GraphError("relabel needs a permutation of 0..n-1")
    return Graph(g.adj[np.ix_(order, order)])
