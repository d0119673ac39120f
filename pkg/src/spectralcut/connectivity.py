"""Exact edge- and vertex-connectivity by unit-capacity Dinic max-flow, with
minimum-cut certificates and the structural checks on minimum cuts."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from . import _kernels
from .graph import Graph, components, edge_boundary, is_regular, min_degree


@dataclass(frozen=True)
class CutCertificate:
    """A vertex set S (sorted) and the size r of its edge boundary."""

    side: tuple[int, ...]
    r: int

    def complement(self, n: int) -> tuple[int, ...]:
        s = set(self.side)
        return tuple(v for v in range(n) if v not in s)

    def sizes(self, n: int) -> tuple[int, int]:
        return len(self.side), n - len(self.side)

    def verify(self, g: Graph) -> bool:
        """Boundary size matches r and S is a proper non-empty subset."""
        if not 1 <= len(self.side) <= g.n - 1:
            return False
        return edge_boundary(g, self.side).size == self.r


def _kernel_adj(g: Graph) -> np.ndarray:
    return np.ascontiguousarray(g.adj, dtype=np.uint8)


def edge_connectivity(g: Graph) -> tuple[int, CutCertificate]:
    """kappa'(g) and a minimum cut.

    Computed as min over sinks v != 0 of maxflow(0 -> v) with unit capacities.
    The certificate is the residual-reachable source side for the smallest
    sink attaining the minimum; for a disconnected graph that is the component
    of vertex 0.
    """
    if g.n < 2:
        raise ValueError("edge connectivity needs at least two vertices")
    value, side, _ = _kernels.edge_connectivity(_kernel_adj(g))
    cert = CutCertificate(tuple(np.flatnonzero(side).tolist()), int(value))
    return int(value), cert


def edge_connectivity_value(g: Graph) -> int:
    """kappa'(g) using only the sinks of a dominating set (same value, faster)."""
    if g.n < 2:
        raise ValueError("edge connectivity needs at least two vertices")
    value, _ = _kernels.edge_connectivity_dominating(_kernel_adj(g))
    return int(value)


def local_edge_connectivity(g: Graph, s: int, t: int) -> int:
    """Maximum number of edge-disjoint s-t paths."""
    if s == t:
        raise ValueError("source and sink must differ")
    return int(_kernels.local_edge_connectivity(_kernel_adj(g), s, t))


def vertex_connectivity(g: Graph) -> int:
    """kappa(g): n-1 for complete graphs, otherwise the minimum over
    non-adjacent pairs of the vertex-split max-flow."""
    if g.n < 2:
        raise ValueError("vertex connectivity needs at least two vertices")
    if g.edge_count == g.n * (g.n - 1) // 2:
        return g.n - 1
    return int(_kernels.vertex_connectivity(_kernel_adj(g)))


def is_connected(g: Graph) -> bool:
    return len(components(g)) <= 1


def check_dense_edge_conn(g: Graph) -> Optional[int]:
    """delta(g) when g is connected with delta >= n/2 (then kappa' = delta), else None."""
    if g.n < 2 or not is_connected(g):
        return None
    delta = min_degree(g)
    if 2 * delta >= g.n:
        return delta
    return None


def check_cut_side_sizes(g: Graph, cert: CutCertificate) -> Optional[bool]:
    """Both sides of a minimum cut of size r <= d-1 in a d-regular graph have
    at least d+1 vertices, and at least d+2 when r is odd.

    Returns None when the statement does not apply (g not regular, or r >= d).
    """
    d = is_regular(g)
    if d is None or cert.r >= d:
        return None
    need = d + 2 if cert.r % 2 else d + 1
    s, s_bar = cert.sizes(g.n)
    return s >= need and s_bar >= need


def cut_from_side(g: Graph, side: Iterable[int]) -> CutCertificate:
    s = tuple(sorted(int(v) for v in side))
    return CutCertificate(s, edge_boundary(g, s).size)
