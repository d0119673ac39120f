"""Vertex partitions, quotient matrices, equitable partitions, eigenvalue
interlacing, and the row-sum reduction of non-negative tridiagonal matrices.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Sequence

import numpy as np

from .graph import Graph
from .spectra import Spectrum, sym_eigenvalues

INTERLACE_TOL = 1e-9
LIFT_TOL = 1e-7


class PartitionError(ValueError):
    pass


@dataclass(frozen=True)
class VertexPartition:
    """Ordered, non-empty, pairwise disjoint blocks covering 0..n-1."""

    blocks: tuple[tuple[int, ...], ...]

    def __init__(self, blocks: Sequence[Sequence[int]]):
        object.__setattr__(self, "blocks", tuple(tuple(int(v) for v in b) for b in blocks))

    @classmethod
    def parse(cls, text: str) -> "VertexPartition":
        """Blocks separated by ';', vertices by ',' e.g. "0,1,2;3,4;5"."""
        blocks = []
        for chunk in text.strip().split(";"):
            chunk = chunk.strip()
            if not chunk:
                raise PartitionError(f"empty block in {text!r}")
            try:
                blocks.append([int(x) for x in chunk.split(",")])
            except ValueError:
                raise PartitionError(f"bad block {chunk!r}") from None
        return cls(blocks)

    @classmethod
    def from_sizes(cls, sizes: Sequence[int]) -> "VertexPartition":
        """Consecutive index ranges of the given sizes."""
        out, start = [], 0
        for s in sizes:
            out.append(range(start, start + s))
            start += s
        return cls(out)

    @classmethod
    def discrete(cls, n: int) -> "VertexPartition":
        return cls([[v] for v in range(n)])

    def sizes(self) -> list[int]:
        return [len(b) for b in self.blocks]

    def validate(self, n: int) -> None:
        seen = set()
        for b in self.blocks:
            if not b:
                raise PartitionError("blocks must be non-empty")
            for v in b:
                if not 0 <= v < n:
                    raise PartitionError(f"vertex {v} outside 0..{n - 1}")
                if v in seen:
                    raise PartitionError(f"vertex {v} appears twice")
                seen.add(v)
        if len(seen) != n:
            raise PartitionError(f"blocks cover {len(seen)} of {n} vertices")

    def indicator(self, n: int) -> np.ndarray:
        x = np.zeros((n, len(self.blocks)), dtype=np.int64)
        for j, b in enumerate(self.blocks):
            x[list(b), j] = 1
        return x

    def __str__(self) -> str:
        return ";".join(",".join(map(str, b)) for b in self.blocks)


@dataclass(frozen=True)
class QuotientMatrix:
    """Quotient of a graph by a partition, kept as exact integer counts.

    ``counts[i][j]`` is |[V_i, V_j]| for i != j and 2|E(G[V_i])| on the
    diagonal; the quotient entry is counts[i][j] / |V_i|.
    """

    counts: np.ndarray
    block_sizes: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.block_sizes)

    def entry(self, i: int, j: int) -> Fraction:
        return Fraction(int(self.counts[i, j]), self.block_sizes[i])

    def fractions(self) -> list[list[Fraction]]:
        return [[self.entry(i, j) for j in range(self.order)] for i in range(self.order)]

    def to_array(self) -> np.ndarray:
        return self.counts / np.array(self.block_sizes, dtype=float)[:, None]

    def row_sums(self) -> list[Fraction]:
        return [sum(row, Fraction(0)) for row in self.fractions()]

    def symmetrized(self) -> np.ndarray:
        """D^{1/2} Q D^{-1/2} with D = diag(block sizes); symmetric, same spectrum."""
        r = np.sqrt(np.array(self.block_sizes, dtype=float))
        return self.counts / np.outer(r, r)

    def eigenvalues(self) -> Spectrum:
        return sym_eigenvalues(self.symmetrized())


def quotient_matrix(g: Graph, p: VertexPartition) -> QuotientMatrix:
    p.validate(g.n)
    x = p.indicator(g.n)
    counts = x.T @ g.adjacency_matrix(np.int64) @ x
    counts.setflags(write=False)
    return QuotientMatrix(counts, tuple(p.sizes()))


def neighbor_counts(g: Graph, p: VertexPartition) -> np.ndarray:
    """counts[v, j] = number of neighbours of v in block j."""
    p.validate(g.n)
    return g.adjacency_matrix(np.int64) @ p.indicator(g.n)


def is_equitable(g: Graph, p: VertexPartition) -> bool:
    """Every vertex of block i has the same number of neighbours in block j."""
    c = neighbor_counts(g, p)
    for b in p.blocks:
        rows = c[list(b)]
        if np.any(rows != rows[0]):
            return False
    return True


def interlaces(outer, inner, tol: float = INTERLACE_TOL) -> bool:
    """a_i >= b_i >= a_{n-m+i} for i = 1..m, both sequences taken non-increasing."""
    a = _desc(outer)
    b = _desc(inner)
    n, m = len(a), len(b)
    if m >= n:
        raise ValueError(f"inner sequence must be shorter (got {m} vs {n})")
    for i in range(m):
        if a[i] < b[i] - tol or b[i] < a[n - m + i] - tol:
            return False
    return True


def _desc(x) -> np.ndarray:
    if isinstance(x, Spectrum):
        return x.nonincreasing()
    return -np.sort(-np.asarray(list(x), dtype=float))


def multiset_contains(big, small, tol: float = LIFT_TOL) -> bool:
    """Greedy nearest matching of each value of ``small`` to an unused value of ``big``."""
    pool = list(_desc(big))
    for v in _desc(small):
        if not pool:
            return False
        k = int(np.argmin([abs(v - w) for w in pool]))
        if abs(pool[k] - v) > tol:
            return False
        pool.pop(k)
    return True


def equitable_lift_check(g: Graph, p: VertexPartition, tol: float = LIFT_TOL) -> bool:
    """For an equitable partition, every quotient eigenvalue is a graph eigenvalue."""
    if not is_equitable(g, p):
        raise PartitionError("partition is not equitable")
    q = quotient_matrix(g, p).eigenvalues()
    return multiset_contains(sym_eigenvalues(g.adjacency_matrix()), q, tol)


# -- tridiagonal row-sum reduction ------------------------------------------


def _exact(x) -> bool:
    return isinstance(x, (Rational, Fraction, int))


@dataclass(frozen=True)
class TridiagonalRowSum:
    """Non-negative tridiagonal matrix with constant row sum d.

    a = (a_0..a_N) diagonal, b = (b_0..b_{N-1}) superdiagonal,
    c = (c_1..c_N) subdiagonal, so row i reads c_i, a_i, b_i.
    """

    a: tuple
    b: tuple
    c: tuple
    d: object

    def __post_init__(self):
        a, b, c = tuple(self.a), tuple(self.b), tuple(self.c)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        if len(a) < 1 or len(b) != len(a) - 1 or len(c) != len(a) - 1:
            raise ValueError("need len(b) == len(c) == len(a) - 1")
        if any(x < 0 for x in a + b + c):
            raise ValueError("entries must be non-negative")
        exact = all(_exact(x) for x in a + b + c + (self.d,))
        tol = 0 if exact else 1e-12 * max(1.0, abs(float(self.d)))
        for i, s in enumerate(self._row_sums()):
            if abs(s - self.d) > tol:
                raise ValueError(f"row {i} sums to {s}, not {self.d}")

    @property
    def order(self) -> int:
        return len(self.a)

    def _row_sums(self):
        n = len(self.a)
        out = []
        for i in range(n):
            s = self.a[i]
            if i < n - 1:
                s = s + self.b[i]
            if i > 0:
                s = s + self.c[i - 1]
            out.append(s)
        return out

    @classmethod
    def from_matrix(cls, m) -> "TridiagonalRowSum":
        rows = [list(r) for r in m]
        n = len(rows)
        for i in range(n):
            for j in range(n):
                if abs(i - j) > 1 and rows[i][j] != 0:
                    raise ValueError("matrix is not tridiagonal")
        a = [rows[i][i] for i in range(n)]
        b = [rows[i][i + 1] for i in range(n - 1)]
        c = [rows[i + 1][i] for i in range(n - 1)]
        d = sum(rows[0])
        return cls(tuple(a), tuple(b), tuple(c), d)

    def to_array(self) -> np.ndarray:
        n = self.order
        out = np.zeros((n, n))
        for i in range(n):
            out[i, i] = float(self.a[i])
            if i < n - 1:
                out[i, i + 1] = float(self.b[i])
                out[i + 1, i] = float(self.c[i])
        return out


def tridiagonal_reduce_entries(m: TridiagonalRowSum) -> tuple[list, list, list]:
    """Bands (diag, sup, sub) of the order-N reduced matrix, in the input's number type.

    diag_i = d - b_i - c_{i+1},  sup_i = b_{i+1},  sub_i = c_{i+1}.
    """
    n = m.order - 1
    if n < 1:
        raise ValueError("order too small: need at least a 2x2 matrix")
    diag = [m.d - m.b[i] - m.c[i] for i in range(n)]
    sup = [m.b[i + 1] for i in range(n - 1)]
    sub = [m.c[i] for i in range(n - 1)]
    return diag, sup, sub


def tridiagonal_reduce(m: TridiagonalRowSum) -> np.ndarray:
    """The reduced matrix whose eigenvalues are those of m with one copy of d removed."""
    diag, sup, sub = tridiagonal_reduce_entries(m)
    n = len(diag)
    out = np.zeros((n, n))
    for i in range(n):
        out[i, i] = float(diag[i])
        if i < n - 1:
            out[i, i + 1] = float(sup[i])
            out[i + 1, i] = float(sub[i])
    return out


def tridiagonal_eigenvalues(m) -> Spectrum:
    """Eigenvalues of a real tridiagonal matrix whose off-diagonal products
    m[i, i+1] * m[i+1, i] are all non-negative.

    The characteristic polynomial depends only on the diagonal and those
    products, so the symmetric matrix with off-diagonals sqrt(product) has the
    same spectrum (this also covers zero products).
    """
    a = np.asarray(m, dtype=float)
    n = a.shape[0]
    mask = np.abs(np.subtract.outer(np.arange(n), np.arange(n))) > 1
    if np.any(a[mask] != 0):
        raise ValueError("matrix is not tridiagonal")
    prods = np.array([a[i, i + 1] * a[i + 1, i] for i in range(n - 1)])
    if np.any(prods < 0):
        raise ValueError("off-diagonal products must be non-negative")
    t = np.diag(np.diag(a))
    off = np.sqrt(prods)
    t[np.arange(n - 1), np.arange(1, n)] = off
    t[np.arange(1, n), np.arange(n - 1)] = off
    return sym_eigenvalues(t)
