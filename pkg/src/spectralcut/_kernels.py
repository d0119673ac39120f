"""Compiled inner loops.

Everything here works on plain numpy arrays so it can be jitted; the public
modules wrap these with validation and the Graph type.
"""

import numpy as np
from numba import njit

# ---------------------------------------------------------------------------
# cyclic Jacobi eigenvalues
# ---------------------------------------------------------------------------


@njit(cache=True)
def jacobi_eigenvalues(a, tol, max_sweeps):
    """Eigenvalues of a symmetric matrix by cyclic-by-row Jacobi rotations.

    Returns (diagonal, sweeps_used, converged). Convergence is declared when the
    off-diagonal Frobenius norm drops below ``tol * (||a||_F + 1)``.
    """
    n = a.shape[0]
    a = a.copy()
    norm0 = 0.0
    for i in range(n):
        for j in range(n):
            norm0 += a[i, j] * a[i, j]
    thresh = tol * (np.sqrt(norm0) + 1.0)
    for sweep in range(max_sweeps + 1):
        off = 0.0
        for i in range(n):
            for j in range(i + 1, n):
                off += 2.0 * a[i, j] * a[i, j]
        if np.sqrt(off) < thresh:
            out = np.empty(n)
            for i in range(n):
                out[i] = a[i, i]
            return out, sweep, True
        if sweep == max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = 1.0 / (abs(theta) + np.sqrt(theta * theta + 1.0))
                    if theta < 0.0:
                        t = -t
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                for k in range(n):
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = c * akp - s * akq
                    a[k, q] = s * akp + c * akq
                for k in range(n):
                    apk = a[p, k]
                    aqk = a[q, k]
                    a[p, k] = c * apk - s * aqk
                    a[q, k] = s * apk + c * aqk
    out = np.empty(n)
    for i in range(n):
        out[i] = a[i, i]
    return out, max_sweeps, False


# ---------------------------------------------------------------------------
# Dinic max-flow on an arc list with paired reverse arcs
# ---------------------------------------------------------------------------


@njit(cache=True)
def build_network(n_nodes, tails, heads, caps, rcaps):
    """CSR residual network. Arc i of the input becomes a forward arc with
    capacity caps[i] and a reverse arc with capacity rcaps[i]."""
    m = tails.shape[0]
    deg = np.zeros(n_nodes, np.int64)
    for i in range(m):
        deg[tails[i]] += 1
        deg[heads[i]] += 1
    start = np.zeros(n_nodes + 1, np.int64)
    for v in range(n_nodes):
        start[v + 1] = start[v] + deg[v]
    pos = start[:-1].copy()
    to = np.empty(2 * m, np.int64)
    rev = np.empty(2 * m, np.int64)
    cap = np.empty(2 * m, np.int64)
    for i in range(m):
        u = tails[i]
        v = heads[i]
        a = pos[u]
        b = pos[v]
        pos[u] += 1
        pos[v] += 1
        to[a] = v
        to[b] = u
        rev[a] = b
        rev[b] = a
        cap[a] = caps[i]
        cap[b] = rcaps[i]
    return start, to, rev, cap


@njit(cache=True)
def max_flow(start, to, rev, cap, s, t, limit, level, it, queue, path):
    """Dinic from s to t, stopping once the flow reaches ``limit``.

    ``cap`` is modified in place into the residual capacities. When the
    returned flow is below ``limit``, ``level >= 0`` marks exactly the vertices
    reachable from s in the final residual network (a minimum s-t cut side).
    """
    n = start.shape[0] - 1
    flow = 0
    while flow < limit:
        for v in range(n):
            level[v] = -1
        level[s] = 0
        head = 0
        tail = 1
        queue[0] = s
        while head < tail:
            u = queue[head]
            head += 1
            for a in range(start[u], start[u + 1]):
                w = to[a]
                if cap[a] > 0 and level[w] < 0:
                    level[w] = level[u] + 1
                    queue[tail] = w
                    tail += 1
        if level[t] < 0:
            break
        for v in range(n):
            it[v] = start[v]
        depth = 0
        u = s
        while flow < limit:
            if u == t:
                b = limit - flow
                for i in range(depth):
                    if cap[path[i]] < b:
                        b = cap[path[i]]
                for i in range(depth):
                    a = path[i]
                    cap[a] -= b
                    cap[rev[a]] += b
                flow += b
                depth = 0
                u = s
                continue
            advanced = False
            while it[u] < start[u + 1]:
                a = it[u]
                w = to[a]
                if cap[a] > 0 and level[w] == level[u] + 1:
                    path[depth] = a
                    depth += 1
                    u = w
                    advanced = True
                    break
                it[u] += 1
            if not advanced:
                if depth == 0:
                    break
                level[u] = -2
                depth -= 1
                u = to[rev[path[depth]]]
                it[u] += 1
    return flow


@njit(cache=True)
def _undirected_arcs(adj):
    n = adj.shape[0]
    m = 0
    for u in range(n):
        for v in range(u + 1, n):
            if adj[u, v]:
                m += 1
    tails = np.empty(m, np.int64)
    heads = np.empty(m, np.int64)
    k = 0
    for u in range(n):
        for v in range(u + 1, n):
            if adj[u, v]:
                tails[k] = u
                heads[k] = v
                k += 1
    ones = np.ones(m, np.int64)
    return tails, heads, ones


@njit(cache=True)
def edge_connectivity(adj):
    """Global min edge cut as min over sinks v of maxflow(0, v).

    Returns (value, side, sink): ``side`` is the source side for the smallest
    sink attaining the minimum.
    """
    n = adj.shape[0]
    tails, heads, ones = _undirected_arcs(adj)
    start, to, rev, cap0 = build_network(n, tails, heads, ones, ones)
    level = np.empty(n, np.int64)
    it = np.empty(n, np.int64)
    queue = np.empty(n, np.int64)
    path = np.empty(n, np.int64)
    best = cap0.shape[0] + 1
    side = np.zeros(n, np.bool_)
    best_sink = -1
    for v in range(1, n):
        cap = cap0.copy()
        f = max_flow(start, to, rev, cap, 0, v, best, level, it, queue, path)
        if f < best:
            best = f
            best_sink = v
            for w in range(n):
                side[w] = level[w] >= 0
    return best, side, best_sink


@njit(cache=True)
def local_edge_connectivity(adj, s, t):
    n = adj.shape[0]
    tails, heads, ones = _undirected_arcs(adj)
    start, to, rev, cap = build_network(n, tails, heads, ones, ones)
    level = np.empty(n, np.int64)
    it = np.empty(n, np.int64)
    queue = np.empty(n, np.int64)
    path = np.empty(n, np.int64)
    return max_flow(start, to, rev, cap, s, t, cap.shape[0] + 1, level, it, queue, path)


@njit(cache=True)
def vertex_connectivity(adj):
    """min over non-adjacent pairs of the split-network vertex max-flow.

    The caller handles complete graphs (n - 1 by convention).
    """
    n = adj.shape[0]
    tails, heads, _ = _undirected_arcs(adj)
    m = tails.shape[0]
    big = n + 1
    nt = np.empty(n + 2 * m, np.int64)
    nh = np.empty(n + 2 * m, np.int64)
    nc = np.empty(n + 2 * m, np.int64)
    nr = np.zeros(n + 2 * m, np.int64)
    for v in range(n):
        nt[v] = 2 * v
        nh[v] = 2 * v + 1
        nc[v] = 1
    for i in range(m):
        u = tails[i]
        v = heads[i]
        nt[n + 2 * i] = 2 * u + 1
        nh[n + 2 * i] = 2 * v
        nc[n + 2 * i] = big
        nt[n + 2 * i + 1] = 2 * v + 1
        nh[n + 2 * i + 1] = 2 * u
        nc[n + 2 * i + 1] = big
    start, to, rev, cap0 = build_network(2 * n, nt, nh, nc, nr)
    level = np.empty(2 * n, np.int64)
    it = np.empty(2 * n, np.int64)
    queue = np.empty(2 * n, np.int64)
    path = np.empty(2 * n, np.int64)
    best = n - 1
    for s in range(n):
        for t in range(s + 1, n):
            if adj[s, t]:
                continue
            cap = cap0.copy()
            f = max_flow(start, to, rev, cap, 2 * s + 1, 2 * t, best, level, it, queue, path)
            if f < best:
                best = f
    return best


# ---------------------------------------------------------------------------
# backtracking enumeration of labeled d-regular graphs (resumable)
# ---------------------------------------------------------------------------


@njit(cache=True)
def _can_set(k, val, n, d, pi, pj, forced, le_prev, x, deg):
    if forced[k] >= 0 and forced[k] != val:
        return False
    if le_prev[k] >= 0 and val > x[le_prev[k]]:
        return False
    i = pi[k]
    j = pj[k]
    di = deg[i] + val
    dj = deg[j] + val
    if di > d or dj > d:
        return False
    if di + (n - 1 - j) < d:
        return False
    if dj + (j - 1 - i) + (n - 1 - j) < d:
        return False
    return True


@njit(cache=True)
def _rows_connected(rows, n):
    seen = 1
    frontier = 1
    while frontier != 0:
        nxt = 0
        for v in range(n):
            if (frontier >> v) & 1:
                nxt |= rows[v]
        nxt &= ~seen
        seen |= nxt
        frontier = nxt
    return seen == (1 << n) - 1


@njit(cache=True)
def enumerate_batch(n, d, pi, pj, forced, le_prev, connected_only, x, deg, state, out):
    """Advance the depth-first enumeration, writing up to len(out) graphs.

    ``state`` = [position, mode, finished]; mode 0 descends into the position,
    mode 1 revisits the choice made there. Graphs are written as row
    bitmasks. Returns the number written; the search can be resumed by
    calling again with the same arrays.
    """
    K = pi.shape[0]
    k = state[0]
    mode = state[1]
    count = 0
    rows = np.zeros(n, np.int64)
    while count < out.shape[0]:
        if mode == 0:
            if k == K:
                for v in range(n):
                    rows[v] = 0
                for q in range(K):
                    if x[q] == 1:
                        rows[pi[q]] |= 1 << pj[q]
                        rows[pj[q]] |= 1 << pi[q]
                if (not connected_only) or _rows_connected(rows, n):
                    for v in range(n):
                        out[count, v] = rows[v]
                    count += 1
                mode = 1
                k -= 1
                continue
            if _can_set(k, 1, n, d, pi, pj, forced, le_prev, x, deg):
                x[k] = 1
                deg[pi[k]] += 1
                deg[pj[k]] += 1
                k += 1
                continue
            if _can_set(k, 0, n, d, pi, pj, forced, le_prev, x, deg):
                x[k] = 0
                k += 1
                continue
            mode = 1
            k -= 1
        else:
            if k < 0:
                state[2] = 1
                break
            v = x[k]
            x[k] = -1
            if v == 1:
                deg[pi[k]] -= 1
                deg[pj[k]] -= 1
                if _can_set(k, 0, n, d, pi, pj, forced, le_prev, x, deg):
                    x[k] = 0
                    k += 1
                    mode = 0
                    continue
            k -= 1
    state[0] = k
    state[1] = mode
    return count


# ---------------------------------------------------------------------------
# random regular graphs by stub pairing
# ---------------------------------------------------------------------------


@njit(cache=True)
def _suitable_pair_exists(points, m, adj):
    for i in range(m):
        for j in range(i + 1, m):
            u = points[i]
            v = points[j]
            if u != v and not adj[u, v]:
                return True
    return False


@njit(cache=True)
def _pair_local(n, d, adj, points):
    # Steger-Wormald style: draw two live stubs uniformly, reject only that draw
    for u in range(n):
        for v in range(n):
            adj[u, v] = 0
    m = n * d
    for i in range(m):
        points[i] = i // d
    fails = 0
    while m > 0:
        i = np.random.randint(0, m)
        j = np.random.randint(0, m)
        u = points[i]
        v = points[j]
        if i == j or u == v or adj[u, v]:
            fails += 1
            if fails > 20 * m + 100:
                if not _suitable_pair_exists(points, m, adj):
                    return False
                fails = 0
            continue
        fails = 0
        adj[u, v] = 1
        adj[v, u] = 1
        if i < j:
            i, j = j, i
        points[i] = points[m - 1]
        points[j] = points[m - 2]
        m -= 2
    return True


@njit(cache=True)
def _pair_restart(n, d, adj, points):
    # plain configuration model: one uniform perfect matching of all stubs
    for u in range(n):
        for v in range(n):
            adj[u, v] = 0
    m = n * d
    for i in range(m):
        points[i] = i // d
    np.random.shuffle(points[:m])
    for k in range(0, m, 2):
        u = points[k]
        v = points[k + 1]
        if u == v or adj[u, v]:
            return False
        adj[u, v] = 1
        adj[v, u] = 1
    return True


@njit(cache=True)
def random_regular_batch(n, d, seed, count, local, max_restarts):
    """``count`` random d-regular graphs from one seeded stream.

    Returns (adjacency stack, total restarts, ok); ok is False when some graph
    exhausted ``max_restarts`` attempts.
    """
    np.random.seed(seed)
    out = np.zeros((count, n, n), np.uint8)
    points = np.empty(n * d, np.int64)
    restarts = 0
    for c in range(count):
        tries = 0
        while True:
            if local:
                ok = _pair_local(n, d, out[c], points)
            else:
                ok = _pair_restart(n, d, out[c], points)
            if ok:
                break
            tries += 1
            restarts += 1
            if tries > max_restarts:
                return out, restarts, False
    return out, restarts, True


@njit(cache=True)
def batch_edge_connectivity(adjs):
    b = adjs.shape[0]
    n = adjs.shape[1]
    vals = np.empty(b, np.int64)
    sides = np.zeros((b, n), np.bool_)
    for i in range(b):
        v, side, _ = edge_connectivity(adjs[i])
        vals[i] = v
        sides[i] = side
    return vals, sides


@njit(cache=True)
def batch_vertex_connectivity(adjs):
    b = adjs.shape[0]
    n = adjs.shape[1]
    vals = np.empty(b, np.int64)
    for i in range(b):
        complete = True
        for u in range(n):
            for v in range(u + 1, n):
                if not adjs[i, u, v]:
                    complete = False
        if complete:
            vals[i] = n - 1
        else:
            vals[i] = vertex_connectivity(adjs[i])
    return vals


@njit(cache=True)
def edge_connectivity_dominating(adj):
    """Exact edge-connectivity with sinks restricted to a dominating set.

    D is the greedy maximal independent set containing vertex 0. If the
    minimum cut r is below the minimum degree, the side without 0 holds a
    vertex whose closed neighbourhood lies on that side, so some member of
    D other than 0 sits there and maxflow(0, that member) = r. Flows are
    capped at the minimum degree. Returns (value, side); side is a
    minimum-degree singleton when the value equals the minimum degree.
    """
    n = adj.shape[0]
    tails, heads, ones = _undirected_arcs(adj)
    start, to, rev, cap0 = build_network(n, tails, heads, ones, ones)
    level = np.empty(n, np.int64)
    it = np.empty(n, np.int64)
    queue = np.empty(n, np.int64)
    path = np.empty(n, np.int64)
    cap = np.empty_like(cap0)
    delta = n
    argmin = 0
    for v in range(n):
        dv = start[v + 1] - start[v]
        if dv < delta:
            delta = dv
            argmin = v
    covered = np.zeros(n, np.bool_)
    sinks = np.empty(n, np.int64)
    ns = 0
    for v in range(n):
        if covered[v]:
            continue
        if v > 0:
            sinks[ns] = v
            ns += 1
        covered[v] = True
        for a in range(start[v], start[v + 1]):
            covered[to[a]] = True
    best = delta
    side = np.zeros(n, np.bool_)
    side[argmin] = True
    for k in range(ns):
        cap[:] = cap0
        f = max_flow(start, to, rev, cap, 0, sinks[k], best, level, it, queue, path)
        if f < best:
            best = f
            for w in range(n):
                side[w] = level[w] >= 0
    return best, side


@njit(cache=True)
def batch_edge_connectivity_fast(adjs):
    b = adjs.shape[0]
    n = adjs.shape[1]
    vals = np.empty(b, np.int64)
    sides = np.zeros((b, n), np.bool_)
    for i in range(b):
        v, side = edge_connectivity_dominating(adjs[i])
        vals[i] = v
        sides[i] = side
    return vals, sides
