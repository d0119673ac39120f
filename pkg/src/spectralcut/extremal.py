"""Threshold functions for lambda_2 and the extremal graphs G_{d,t}.

rho(d, t) is the sharp bound: a d-regular graph with lambda_2 < rho(d, t)
has edge-connectivity at least t+1, and G_{d,t} attains lambda_2 = rho(d, t)
with edge-connectivity exactly t.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .graph import (
    Graph,
    complement,
    complete,
    cycle,
    disjoint_union,
    join,
    matching_complement,
)
from .partitions import VertexPartition
from .spectra import largest_real_root

SPECTRAL_TOL = 1e-9


class ParameterError(ValueError):
    pass


@dataclass(frozen=True)
class ThresholdParams:
    d: int
    t: int

    def validate_construction(self) -> None:
        d, t = self.d, self.t
        if d < 4 or not 3 <= t <= d - 1:
            raise ParameterError(f"need 3 <= t <= d-1, got d={d}, t={t}")
        if t % 2 == 1 and d % 2 == 0:
            raise ParameterError(f"odd t={t} needs odd d (got d={d})")

    @property
    def sharp(self) -> bool:
        """Whether lambda_2(G_{d,t}) = rho(d,t) is covered (t <= d-2)."""
        return 3 <= self.t <= self.d - 2


def valid_pairs(dmax: int, dmin: int = 4, sharp_only: bool = True) -> list[tuple[int, int]]:
    """All (d, t) with a construction, optionally restricted to t <= d-2."""
    out = []
    for d in range(dmin, dmax + 1):
        top = d - 2 if sharp_only else d - 1
        for t in range(3, top + 1):
            if t % 2 == 1 and d % 2 == 0:
                continue
            out.append((d, t))
    return out


# -- thresholds --------------------------------------------------------------


def _root_form(d: int, t: int, shift: int) -> float:
    disc = (d + shift) ** 2 - 8 * t
    if disc < 0:
        raise ParameterError(f"negative discriminant for d={d}, t={t}")
    return (d - shift + math.sqrt(disc)) / 2


def rho_odd(d: int, t: int) -> float:
    """(d - 4 + sqrt((d+4)^2 - 8t)) / 2"""
    return _root_form(d, t, 4)


def rho_even(d: int, t: int) -> float:
    """(d - 3 + sqrt((d+3)^2 - 8t)) / 2"""
    return _root_form(d, t, 3)


def rho(d: int, t: int) -> float:
    if t < 1 or d < 3:
        raise ParameterError(f"need d >= 3 and t >= 1, got d={d}, t={t}")
    return rho_odd(d, t) if t % 2 else rho_even(d, t)


def thm12_bound(d: int) -> float:
    """Threshold for 3-edge-connectivity, (d - 3 + sqrt((d+3)^2 - 16)) / 2."""
    return (d - 3 + math.sqrt((d + 3) ** 2 - 16)) / 2


def pi_cubic(d: int) -> list[int]:
    return [1, -(d - 3), -(3 * d - 2), -2]


def pi(d: int) -> float:
    """Largest root of x^3 - (d-3)x^2 - (3d-2)x - 2, for odd d >= 3."""
    if d < 3 or d % 2 == 0:
        raise ParameterError(f"pi(d) is defined for odd d >= 3, got {d}")
    return largest_real_root(pi_cubic(d))


def cioaba_weak_bound(d: int, t: int) -> float:
    return d - 2 * t / (d + 1)


def guaranteed_edge_connectivity(d: int, lam2: float) -> int:
    """Best lower bound on kappa' of a d-regular graph with the given lambda_2.

    Scans t = d-1 down to 3 against rho(d, t); otherwise falls back to the
    t = 2 threshold, then to pi(d) (odd d) or the weak bound with t = 1.
    """
    if d < 4:
        raise ParameterError("need d >= 4")
    if lam2 >= d:
        raise ParameterError(f"lambda_2 = {lam2} is not below d = {d}")
    for t in range(d - 1, 2, -1):
        if lam2 < rho(d, t) - SPECTRAL_TOL:
            return t + 1
    if lam2 < thm12_bound(d) - SPECTRAL_TOL:
        return 3
    t1 = pi(d) if d % 2 else cioaba_weak_bound(d, 1)
    if lam2 < t1 - SPECTRAL_TOL:
        return 2
    return 1


# -- constructions -----------------------------------------------------------


def build_H(d: int, t: int) -> Graph:
    """H_{d,t}. The t vertices of degree d-1 carry the last t labels."""
    ThresholdParams(d, t).validate_construction()
    if t % 2:
        return join(matching_complement((d + 2 - t) // 2), complement(cycle(t)))
    return join(complete(d + 1 - t), matching_complement(t // 2))


def build_G(d: int, t: int) -> Graph:
    """Two copies of H_{d,t}; deficient vertex i of each copy joined to its twin."""
    h = build_H(d, t)
    m = h.n
    u = disjoint_union(h, h)
    a = u.adjacency_matrix(bool)
    for i in range(t):
        x, y = m - t + i, 2 * m - t + i
        a[x, y] = a[y, x] = True
    return Graph(a)


def canonical_partition(d: int, t: int) -> VertexPartition:
    """(full_1, deficient_1, deficient_2, full_2) for build_G(d, t)."""
    ThresholdParams(d, t).validate_construction()
    m = d + 2 if t % 2 else d + 1
    return VertexPartition(
        [range(0, m - t), range(m - t, m), range(2 * m - t, 2 * m), range(m, 2 * m - t)]
    )


def expected_quotient(d: int, t: int) -> np.ndarray:
    """The quotient of G_{d,t} under the canonical partition."""
    ThresholdParams(d, t).validate_construction()
    f = d + 2 - t if t % 2 else d + 1 - t
    inner = t - 3 if t % 2 else t - 2
    return np.array(
        [
            [d - t, t, 0, 0],
            [f, inner, 1, 0],
            [0, 1, inner, f],
            [0, 0, t, d - t],
        ],
        dtype=np.int64,
    )


def expected_quotient_eigenvalues(d: int, t: int) -> list[float]:
    """{d, -2, (d-4 +/- sqrt((d+4)^2 - 8t))/2} for odd t and
    {d, -1, (d-3 +/- sqrt((d+3)^2 - 8t))/2} for even t.

    The even-t quotient factors as (x-d)(x+1)(x^2 - (d-3)x + 2t - 3d).
    """
    s, fixed = (4, -2.0) if t % 2 else (3, -1.0)
    root = math.sqrt((d + s) ** 2 - 8 * t)
    return sorted([d, fixed, (d - s + root) / 2, (d - s - root) / 2], reverse=True)


def matching_block_spectrum(d: int, t: int) -> Optional[list[float]]:
    """Spectrum of the complement of ((d+2-t)/2) K_2 inside H_{d,t} (odd t only)."""
    if t % 2 == 0:
        return None
    m = (d + 2 - t) // 2
    return [float(d - t)] + [0.0] * m + [-2.0] * (m - 1)


def deficient_matching(d: int, t: int) -> Graph:
    """The t cross edges of G_{d,t} as a graph on its vertex set."""
    h_n = d + 2 if t % 2 else d + 1
    edges = [(h_n - t + i, 2 * h_n - t + i) for i in range(t)]
    return Graph.from_edges(2 * h_n, edges)


__all__ = [
    "ParameterError",
    "ThresholdParams",
    "valid_pairs",
    "rho",
    "rho_odd",
    "rho_even",
    "thm12_bound",
    "pi",
    "pi_cubic",
    "cioaba_weak_bound",
    "guaranteed_edge_connectivity",
    "build_H",
    "build_G",
    "canonical_partition",
    "expected_quotient",
    "expected_quotient_eigenvalues",
    "matching_block_spectrum",
    "deficient_matching",
]
