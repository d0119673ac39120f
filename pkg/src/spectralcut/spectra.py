"""Eigenvalues of symmetric matrices and the graph spectra built on them.

The eigensolver is cyclic Jacobi (compiled). Adjacency spectra are kept in
non-increasing order (lambda_1 >= lambda_2 >= ...), Laplacian spectra in
non-decreasing order (0 = mu_1 <= mu_2 <= ...).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import _kernels
from .graph import Graph

JACOBI_TOL = 1e-12
JACOBI_MAX_SWEEPS = 100
SYMMETRY_TOL = 1e-12


class ConvergenceError(ArithmeticError):
    """The Jacobi iteration did not reach the off-diagonal tolerance."""


@dataclass(frozen=True)
class Spectrum:
    """Sorted real eigenvalues. ``descending`` records the order convention."""

    values: np.ndarray
    descending: bool = True

    def __post_init__(self):
        v = np.array(self.values, dtype=float)
        v = -np.sort(-v) if self.descending else np.sort(v)
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def __iter__(self):
        return iter(self.values.tolist())

    def nonincreasing(self) -> np.ndarray:
        return self.values if self.descending else self.values[::-1]

    def to_text(self) -> str:
        """One value per line, 9 decimals, non-increasing."""
        return "".join(f"{format_float(x)}\n" for x in self.nonincreasing())


def format_float(x: float) -> str:
    s = f"{x:.9f}"
    return "0.000000000" if s == "-0.000000000" else s


def as_symmetric(m) -> np.ndarray:
    """Validate a real symmetric matrix and return its averaged symmetric part."""
    a = np.array(m, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise ValueError(f"need a non-empty square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    scale = max(1.0, float(np.abs(a).max()))
    if np.abs(a - a.T).max() > SYMMETRY_TOL * scale:
        raise ValueError("matrix is not symmetric")
    return 0.5 * (a + a.T)


def sym_eigenvalues(m, descending: bool = True) -> Spectrum:
    """All eigenvalues of a real symmetric matrix by cyclic Jacobi rotations."""
    a = as_symmetric(m)
    vals, _, converged = _kernels.jacobi_eigenvalues(a, JACOBI_TOL, JACOBI_MAX_SWEEPS)
    if not converged:
        raise ConvergenceError(f"Jacobi did not converge in {JACOBI_MAX_SWEEPS} sweeps")
    return Spectrum(vals, descending)


def adjacency_spectrum(g: Graph) -> Spectrum:
    if g.n < 1:
        raise ValueError("graph has no vertices")
    return sym_eigenvalues(g.adjacency_matrix())


def laplacian_spectrum(g: Graph) -> Spectrum:
    if g.n < 1:
        raise ValueError("graph has no vertices")
    return sym_eigenvalues(g.laplacian_matrix(), descending=False)


def lambda2(g: Graph) -> float:
    """Second largest adjacency eigenvalue."""
    if g.n < 2:
        raise ValueError("lambda_2 needs at least two vertices")
    return float(adjacency_spectrum(g)[1])


def mu2(g: Graph) -> float:
    """Algebraic connectivity: second smallest Laplacian eigenvalue."""
    if g.n < 2:
        raise ValueError("mu_2 needs at least two vertices")
    return float(laplacian_spectrum(g)[1])


def batch_lambda2(adjs: np.ndarray) -> np.ndarray:
    """lambda_2 for a stack of same-order adjacency matrices (LAPACK, batched)."""
    ev = np.linalg.eigvalsh(np.asarray(adjs, dtype=float))
    return ev[:, -2]


# -- polynomial roots -------------------------------------------------------

ROOT_SCAN_STEP = 1.0 / 64.0
ROOT_TOL = 1e-12


def polyval(coeffs: Sequence[float], x: float) -> float:
    """Horner evaluation; coefficients from the leading term down."""
    acc = 0.0
    for c in coeffs:
        acc = acc * x + c
    return acc


def _bisect(coeffs, lo: float, hi: float) -> float:
    flo = polyval(coeffs, lo)
    for _ in range(200):
        if hi - lo < ROOT_TOL:
            break
        mid = 0.5 * (lo + hi)
        fm = polyval(coeffs, mid)
        if fm == 0.0:
            return mid
        if (fm < 0) == (flo < 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def largest_real_root(coeffs: Sequence[float]) -> float:
    """Largest real root by a 1/64 sign-change scan downward from the Cauchy
    bound, then bisection to a bracket narrower than 1e-12.

    Only roots where the polynomial changes sign are found.
    """
    c = [float(x) for x in coeffs]
    while c and c[0] == 0.0:
        c.pop(0)
    if len(c) < 2:
        raise ValueError("need a polynomial of degree >= 1 with nonzero leading coefficient")
    bound = 1.0 + max(abs(x / c[0]) for x in c[1:])
    hi = bound
    fhi = polyval(c, hi)
    steps = int(np.ceil(2 * bound / ROOT_SCAN_STEP)) + 1
    for k in range(1, steps + 1):
        lo = bound - k * ROOT_SCAN_STEP
        flo = polyval(c, lo)
        if flo == 0.0:
            return lo
        if (flo < 0) != (fhi < 0):
            return _bisect(c, lo, hi)
        hi, fhi = lo, flo
    raise ValueError("no sign change found: no simple real root in the bracket")
