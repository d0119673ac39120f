"""Text formats: the canonical edge list ("n m" header, then "u v" lines with
u < v) and graph6 decoding."""

from __future__ import annotations

import hashlib
from typing import Iterator

import numpy as np

from .graph import Graph, GraphError


def to_edgelist(g: Graph) -> str:
    edges = g.edges()
    lines = [f"{g.n} {len(edges)}"]
    lines.extend(f"{u} {v}" for u, v in edges)
    return "\n".join(lines) + "\n"


def from_edgelist(text: str) -> Graph:
    """Parse the canonical edge list. Blank lines and '#' comments are ignored."""
    rows = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append(line.split())
    if not rows:
        raise GraphError("empty edge list")
    try:
        header = [int(x) for x in rows[0]]
    except ValueError:
        raise GraphError(f"bad header line: {' '.join(rows[0])!r}") from None
    if len(header) != 2:
        raise GraphError("header must be 'n m'")
    n, m = header
    if len(rows) - 1 != m:
        raise GraphError(f"header declares {m} edges, found {len(rows) - 1}")
    edges = []
    for r in rows[1:]:
        if len(r) != 2:
            raise GraphError(f"bad edge line: {' '.join(r)!r}")
        try:
            u, v = int(r[0]), int(r[1])
        except ValueError:
            raise GraphError(f"bad edge line: {' '.join(r)!r}") from None
        edges.append((u, v))
    return Graph.from_edges(n, edges)


def graph_id(g: Graph) -> str:
    """Short stable hash of the canonical edge list (label dependent)."""
    return hashlib.sha1(to_edgelist(g).encode()).hexdigest()[:16]


def _g6_size(data: bytes) -> tuple[int, int]:
    if not data:
        raise GraphError("empty graph6 string")
    if data[0] != 126:
        return data[0] - 63, 1
    if len(data) >= 2 and data[1] == 126:
        if len(data) < 8:
            raise GraphError("truncated graph6 size field")
        n = 0
        for c in data[2:8]:
            n = (n << 6) | (c - 63)
        return n, 8
    if len(data) < 4:
        raise GraphError("truncated graph6 size field")
    n = 0
    for c in data[1:4]:
        n = (n << 6) | (c - 63)
    return n, 4


def from_graph6(s: str | bytes) -> Graph:
    """Decode one graph6 record (optional >>graph6<< header)."""
    data = s.encode("ascii") if isinstance(s, str) else bytes(s)
    data = data.strip()
    if data.startswith(b">>graph6<<"):
        data = data[10:]
    if data[:1] in (b":", b";", b"&"):
        raise GraphError("sparse6/digraph6 records are not graph6")
    if any(c < 63 or c > 126 for c in data):
        raise GraphError("graph6 characters must lie in 63..126")
    n, off = _g6_size(data)
    nbits = n * (n - 1) // 2
    body = data[off:]
    need = (nbits + 5) // 6
    if len(body) != need:
        raise GraphError(f"graph6 body has {len(body)} bytes, expected {need}")
    if need:
        six = np.frombuffer(body, dtype=np.uint8) - 63
        bits = np.unpackbits(six[:, None], axis=1)[:, 2:].ravel()[:nbits].astype(bool)
    else:
        bits = np.zeros(0, dtype=bool)
    # bit order: (0,1), (0,2), (1,2), (0,3), ... i.e. column-wise upper triangle
    cols = np.repeat(np.arange(n), np.arange(n))
    rows = np.concatenate([np.arange(j) for j in range(n)]) if n else np.zeros(0, int)
    a = np.zeros((n, n), dtype=bool)
    a[rows[bits], cols[bits]] = True
    a |= a.T
    return Graph(a)


def read_graph6_lines(text: str) -> Iterator[Graph]:
    for line in text.splitlines():
        line = line.strip()
        if line:
            yield from_graph6(line)


def read_graph(text: str) -> Graph:
    """Read one graph, accepting either the edge list or a single graph6 line."""
    first = next((ln.strip() for ln in text.splitlines() if ln.strip()), "")
    parts = first.split()
    if len(parts) == 2 and all(p.lstrip("-").isdigit() for p in parts):
        return from_edgelist(text)
    return from_graph6(first)
