"""Slow, independent reference computations used to check the fast paths.

Nothing here shares code with the Jacobi solver, the max-flow kernels or the
backtracking enumerator.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Sequence

import numpy as np

from .graph import Graph


# -- characteristic polynomial and its real roots ---------------------------


def faddeev_leverrier(m) -> list[Fraction]:
    """Characteristic polynomial det(xI - M), leading coefficient first.

    Exact when the entries are integers or Fractions.
    """
    rows = [[Fraction(x) for x in row] for row in np.asarray(m, dtype=object).tolist()]
    n = len(rows)
    coeffs = [Fraction(1)]
    mk = [[Fraction(0)] * n for _ in range(n)]
    c_prev = Fraction(1)
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I ;  c_{n-k} = -tr(A M_k) / k
        prod = [[sum(rows[i][t] * mk[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        for i in range(n):
            prod[i][i] += c_prev
        mk = prod
        am = sum(sum(rows[i][t] * mk[t][i] for t in range(n)) for i in range(n))
        c_prev = -am / k
        coeffs.append(c_prev)
    return coeffs


def _trim(p):
    p = list(p)
    while len(p) > 1 and p[0] == 0:
        p.pop(0)
    return p


def _derivative(p):
    deg = len(p) - 1
    return [c * (deg - i) for i, c in enumerate(p[:-1])]


def _divmod(a, b):
    a = _trim(a)
    b = _trim(b)
    q = [Fraction(0)] * max(1, len(a) - len(b) + 1)
    r = list(a)
    while len(r) >= len(b) and any(r):
        f = r[0] / b[0]
        k = len(r) - len(b)
        q[len(q) - 1 - k] = f
        for i in range(len(b)):
            r[i] -= f * b[i]
        r.pop(0)
    return _trim(q), _trim(r or [Fraction(0)])


def _gcd(a, b):
    a, b = _trim(a), _trim(b)
    while any(b):
        _, r = _divmod(a, b)
        a, b = b, r
    return [c / a[0] for c in a]


def _sub(p, q):
    width = max(len(p), len(q))
    p = [Fraction(0)] * (width - len(p)) + list(p)
    q = [Fraction(0)] * (width - len(q)) + list(q)
    return _trim([x - y for x, y in zip(p, q)])


def squarefree_factors(p: Sequence[Fraction]) -> list[tuple[list[Fraction], int]]:
    """Yun's decomposition: [(factor, multiplicity), ...] with squarefree factors."""
    p = _trim([Fraction(c) for c in p])
    if len(p) < 2:
        return []
    dp = _derivative(p)
    a = _gcd(p, dp)
    b, _ = _divmod(p, a)
    c, _ = _divmod(dp, a)
    d = _sub(c, _derivative(b))
    out = []
    i = 1
    while len(b) > 1:
        a = _gcd(b, d)
        if len(a) > 1:
            out.append((a, i))
        b, _ = _divmod(b, a)
        c, _ = _divmod(d, a)
        d = _sub(c, _derivative(b) if len(b) > 1 else [Fraction(0)])
        i += 1
    return out


def _evalf(p, x: float) -> float:
    acc = 0.0
    for c in p:
        acc = acc * x + float(c)
    return acc


def _real_rooted_simple_roots(p) -> list[float]:
    """Roots of a squarefree polynomial all of whose roots are real.

    The critical points interlace the roots (Rolle), so the roots of p' bracket
    the roots of p; recurse on the derivative.
    """
    p = _trim(p)
    deg = len(p) - 1
    if deg == 0:
        return []
    if deg == 1:
        return [float(-p[1] / p[0])]
    crit = _real_rooted_simple_roots(_derivative(p))
    bound = 1.0 + max(abs(float(c / p[0])) for c in p[1:])
    edges = [-bound] + crit + [bound]
    roots = []
    for lo, hi in zip(edges[:-1], edges[1:]):
        flo, fhi = _evalf(p, lo), _evalf(p, hi)
        if flo == 0.0:
            roots.append(lo)
            continue
        if (flo < 0) == (fhi < 0):
            continue
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            if mid in (lo, hi):
                break
            fm = _evalf(p, mid)
            if (fm < 0) == (flo < 0):
                lo, flo = mid, fm
            else:
                hi = mid
        roots.append(0.5 * (lo + hi))
    return roots


def charpoly_eigenvalues(m) -> np.ndarray:
    """Eigenvalues of a symmetric integer/rational matrix from its exact
    characteristic polynomial, with multiplicities, sorted non-increasing."""
    vals = []
    for factor, mult in squarefree_factors(faddeev_leverrier(m)):
        vals.extend(_real_rooted_simple_roots(factor) * mult)
    return np.array(sorted(vals, reverse=True))


# -- connectivity by enumeration ---------------------------------------------


def brute_force_edge_connectivity(g: Graph) -> tuple[int, list[int]]:
    """min |[S, S-bar]| over proper subsets S containing vertex 0.

    Returns (value, S) for the first minimising S in mask order.
    """
    n = g.n
    if n < 2:
        raise ValueError("edge connectivity needs n >= 2")
    if n > 22:
        raise ValueError("brute force is limited to n <= 22")
    a = g.adjacency_matrix(np.int64)
    deg = a.sum(axis=1)
    masks = np.arange(2 ** (n - 1) - 1, dtype=np.int64)  # bits over vertices 1..n-1; full set excluded
    best, best_side = None, None
    chunk = 1 << 14
    for lo in range(0, len(masks), chunk):
        mk = masks[lo : lo + chunk]
        x = np.zeros((len(mk), n), dtype=np.int64)
        x[:, 0] = 1
        x[:, 1:] = (mk[:, None] >> np.arange(n - 1)) & 1
        inside = np.einsum("bi,ij,bj->b", x, a, x)
        cut = x @ deg - inside
        k = int(np.argmin(cut))
        if best is None or cut[k] < best:
            best = int(cut[k])
            best_side = np.flatnonzero(x[k]).tolist()
    return best, best_side


def brute_force_vertex_connectivity(g: Graph) -> int:
    """Smallest vertex set whose removal disconnects g (n-1 for complete graphs)."""
    n = g.n
    a = g.adj
    if np.count_nonzero(a) == n * (n - 1):
        return n - 1
    for k in range(n - 1):
        for cut in combinations(range(n), k):
            keep = [v for v in range(n) if v not in set(cut)]
            sub = a[np.ix_(keep, keep)]
            seen = {0}
            stack = [0]
            while stack:
                u = stack.pop()
                for w in np.flatnonzero(sub[u]):
                    if int(w) not in seen:
                        seen.add(int(w))
                        stack.append(int(w))
            if len(seen) < len(keep):
                return k
    return n - 1


def brute_force_regular_count(n: int, d: int) -> int:
    """Number of labeled d-regular graphs on n vertices by scanning all edge subsets."""
    pairs = list(combinations(range(n), 2))
    m = len(pairs)
    if m > 24:
        raise ValueError("too many edge subsets to scan")
    if (n * d) % 2:
        return 0
    inc = np.zeros((m, n), dtype=np.int64)
    for k, (u, v) in enumerate(pairs):
        inc[k, u] = inc[k, v] = 1
    count = 0
    chunk = 1 << 16
    total = 1 << m
    for lo in range(0, total, chunk):
        masks = np.arange(lo, min(total, lo + chunk), dtype=np.int64)
        bits = (masks[:, None] >> np.arange(m)) & 1
        deg = bits @ inc
        count += int(np.count_nonzero(np.all(deg == d, axis=1)))
    return count
