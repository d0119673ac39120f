"""Regular-graph corpora and end-to-end verification of the lambda_2
threshold for edge-connectivity.

For each d-regular graph and each t in [3, d-1] the harness records a
ThresholdReport row. A row is a VIOLATION when lambda_2 < rho(d, t) - 1e-9
and yet kappa' <= t; that would contradict the theorem, so the run aborts
and the offending graph is written to disk.

Every graph also gets the structural checks that the proof relies on:
the two-block quotient bound lambda_2 >= d - r/s - r/s' on a minimum cut,
the cut-side size bounds when kappa' < d, and (n <= nmax_fiedler)
mu_2 <= kappa.
"""

from __future__ import annotations

import csv
import io
import math
import os
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Iterable, Iterator, Optional

import numpy as np

from . import _kernels
from .connectivity import CutCertificate, edge_connectivity
from .extremal import build_G, rho, rho_even, valid_pairs
from .graph import Graph, GraphError, is_regular
from .io import graph_id, to_edgelist
from .spectra import batch_lambda2, lambda2, sym_eigenvalues

TOL = 1e-9
MAX_ENUM_N = 10
VERDICTS = ("consistent", "tight", "VIOLATION")


class HarnessViolation(RuntimeError):
    """A counterexample row was found; ``path`` holds the dumped edge list."""

    def __init__(self, row: "ThresholdReport", path: Optional[Path]):
        super().__init__(f"VIOLATION at d={row.d}, t={row.t}, n={row.n}, graph {row.graph_id}")
        self.row = row
        self.path = path


class GenerationError(RuntimeError):
    pass


# -- report rows -------------------------------------------------------------


@dataclass(frozen=True)
class ThresholdReport:
    d: int
    t: int
    n: int
    graph_id: str
    lambda2: float
    rho: float
    kappa_prime: int
    verdict: str

    def csv_fields(self) -> list[str]:
        return [
            str(self.d),
            str(self.t),
            str(self.n),
            self.graph_id,
            f"{self.lambda2:.9f}",
            f"{self.rho:.9f}",
            str(self.kappa_prime),
            self.verdict,
        ]


CSV_HEADER = [f.name for f in fields(ThresholdReport)]


def classify(lam2: float, rho_value: float, kappa_prime: int, t: int) -> str:
    if lam2 < rho_value - TOL and kappa_prime <= t:
        return "VIOLATION"
    if abs(lam2 - rho_value) <= TOL:
        return "tight"
    return "consistent"


def rows_to_csv(rows: Iterable[ThresholdReport]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in rows:
        w.writerow(r.csv_fields())
    return buf.getvalue()


# -- generation --------------------------------------------------------------


def _check_nd(n: int, d: int) -> None:
    if d < 0 or n < 1:
        raise ValueError(f"bad parameters n={n}, d={d}")
    if d >= n:
        raise ValueError(f"need d < n (n={n}, d={d})")
    if (n * d) % 2:
        raise ValueError(f"n*d must be even (n={n}, d={d})")


def cell_seed(seed: int, n: int, d: int) -> int:
    """Independent 32-bit seed for the (n, d) cell."""
    return int(np.random.SeedSequence([seed, n, d]).generate_state(1)[0])


def random_regular_stack(
    n: int, d: int, seed: int, count: int, method: str = "local", max_restarts: int = 10_000
) -> np.ndarray:
    """``count`` random d-regular adjacency matrices (uint8) from one seeded stream.

    method "local" pairs stubs one edge at a time, choosing only pairs that
    keep the graph simple and restarting only when no such pair remains.
    method "restart" is the plain configuration model that discards the whole
    pairing on any loop or repeated edge.
    """
    _check_nd(n, d)
    if method not in ("local", "restart"):
        raise ValueError(f"unknown method {method!r}")
    adjs, _, ok = _kernels.random_regular_batch(n, d, seed, count, method == "local", max_restarts)
    if not ok:
        raise GenerationError(f"restart budget exhausted for n={n}, d={d}, seed={seed}")
    return adjs


def random_regular(n: int, d: int, seed: int, method: str = "local") -> Graph:
    """One random d-regular graph, deterministic in the seed.

    If the restart budget runs out, generation retries with seeds derived
    from the original one.
    """
    s = seed
    for _ in range(8):
        try:
            return Graph(random_regular_stack(n, d, s, 1, method)[0].astype(bool))
        except GenerationError:
            s = cell_seed(s, n, d)
    raise GenerationError(f"could not generate a {d}-regular graph on {n} vertices")


def _enum_layout(n: int, d: int, rooted: bool):
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    pi = np.array([p[0] for p in pairs], dtype=np.int64)
    pj = np.array([p[1] for p in pairs], dtype=np.int64)
    forced = -np.ones(len(pairs), dtype=np.int64)
    le_prev = -np.ones(len(pairs), dtype=np.int64)
    if rooted and d >= 1:
        index = {p: k for k, p in enumerate(pairs)}
        for k, (i, j) in enumerate(pairs):
            if i == 0:
                forced[k] = 1 if j <= d else 0
        # vertex 1's neighbours form an initial segment of {2..d} and of {d+1..n-1}
        for j in range(3, d + 1):
            le_prev[index[(1, j)]] = index[(1, j - 1)]
        for j in range(d + 2, n):
            le_prev[index[(1, j)]] = index[(1, j - 1)]
    return pi, pj, forced, le_prev


def enumerate_rows(
    n: int, d: int, connected_only: bool = False, rooted: bool = False, batch: int = 4096
) -> Iterator[np.ndarray]:
    """Batches of graphs as row bitmasks (int64, shape (k, n))."""
    if not 1 <= n <= MAX_ENUM_N:
        raise ValueError(f"exhaustive enumeration supports 1 <= n <= {MAX_ENUM_N}")
    if d >= n or d < 0 or (n * d) % 2:
        return
    pi, pj, forced, le_prev = _enum_layout(n, d, rooted)
    if len(pi) == 0:
        if d == 0:
            yield np.zeros((1, n), dtype=np.int64)
        return
    x = -np.ones(len(pi), dtype=np.int8)
    deg = np.zeros(n, dtype=np.int64)
    state = np.zeros(3, dtype=np.int64)
    out = np.zeros((batch, n), dtype=np.int64)
    while not state[2]:
        c = _kernels.enumerate_batch(n, d, pi, pj, forced, le_prev, connected_only, x, deg, state, out)
        if c:
            yield out[:c].copy()


def rows_to_adjacency(rows: np.ndarray, n: int) -> np.ndarray:
    return ((rows[:, :, None] >> np.arange(n)) & 1).astype(np.uint8)


def enumerate_regular(n: int, d: int, connected_only: bool = False, rooted: bool = False) -> Iterator[Graph]:
    """All d-regular graphs on the labeled vertex set 0..n-1 (n <= 10).

    With ``rooted=True`` the search is restricted to graphs where vertex 0
    is adjacent to exactly 1..d and vertex 1's neighbours form initial
    segments of {2..d} and {d+1..n-1}. Every isomorphism class still occurs
    at least once, at a small fraction of the labeled count.
    """
    for rows in enumerate_rows(n, d, connected_only, rooted):
        for a in rows_to_adjacency(rows, n):
            yield Graph(a.astype(bool))


def count_regular(n: int, d: int, connected_only: bool = False, rooted: bool = False) -> int:
    return sum(len(r) for r in enumerate_rows(n, d, connected_only, rooted))


# -- per-graph verification --------------------------------------------------


@dataclass
class Tally:
    """Associative counters; merging in any order gives the same totals."""

    graphs: int = 0
    rows: int = 0
    tight: int = 0
    violations: int = 0
    eq1_checked: int = 0
    eq1_failed: int = 0
    eq1_worst: float = math.inf
    sides_checked: int = 0
    sides_failed: int = 0
    fiedler_checked: int = 0
    fiedler_failed: int = 0
    fiedler_worst: float = math.inf
    even_branch_checked: int = 0
    even_branch_failed: int = 0

    def merge(self, other: "Tally") -> "Tally":
        for f in fields(self):
            a, b = getattr(self, f.name), getattr(other, f.name)
            setattr(self, f.name, min(a, b) if f.name.endswith("worst") else a + b)
        return self

    @property
    def structural_failures(self) -> int:
        return self.eq1_failed + self.sides_failed + self.fiedler_failed + self.even_branch_failed


@dataclass
class CellResult:
    corpus: str
    n: int
    d: int
    tally: Tally
    rows: list = field(default_factory=list)


def t_range(d: int) -> range:
    return range(3, d)


def _graph_rows(g_id: str, d: int, n: int, lam: float, kap: int, ts) -> list[ThresholdReport]:
    out = []
    for t in ts:
        r = rho(d, t)
        out.append(ThresholdReport(d, t, n, g_id, lam, r, kap, classify(lam, r, kap, t)))
    return out


def _structural(
    tally: Tally, adj: np.ndarray, d: int, lam: float, kap: int, ts, nmax_fiedler: int, kappa: Optional[int]
) -> Optional[CutCertificate]:
    """Certificate-based checks for one graph; returns the certificate if one was computed."""
    n = adj.shape[0]
    cert = None
    top_t = max(ts) if len(ts) else d - 1
    if kap < d:
        value, side, _ = _kernels.edge_connectivity(np.ascontiguousarray(adj))
        cert = CutCertificate(tuple(np.flatnonzero(side).tolist()), int(value))
        if cert.r != kap:
            raise AssertionError(f"max-flow routes disagree: {cert.r} vs {kap}")
        s, s_bar = cert.sizes(n)
        if cert.r <= top_t:
            bound = d - cert.r / s - cert.r / s_bar
            tally.eq1_checked += 1
            tally.eq1_worst = min(tally.eq1_worst, lam - bound)
            if lam < bound - TOL:
                tally.eq1_failed += 1
        if 1 <= cert.r <= d - 1:
            need = d + 2 if cert.r % 2 else d + 1
            tally.sides_checked += 1
            if s < need or s_bar < need:
                tally.sides_failed += 1
    if kappa is not None and n <= nmax_fiedler and kap > 0 and d < n - 1:
        mu = d - lam
        tally.fiedler_checked += 1
        tally.fiedler_worst = min(tally.fiedler_worst, kappa - mu)
        if mu > kappa + TOL or not kappa <= kap <= d:
            tally.fiedler_failed += 1
    return cert


def _process_batch(
    adjs: np.ndarray,
    lams: np.ndarray,
    d: int,
    ts,
    tally: Tally,
    keep_rows: bool,
    nmax_fiedler: int,
    violation_dir: Optional[Path],
) -> list[ThresholdReport]:
    n = adjs.shape[1]
    kaps, _ = _kernels.batch_edge_connectivity_fast(adjs)
    kappas = _kernels.batch_vertex_connectivity(adjs) if n <= nmax_fiedler else None
    rows = []
    ts = list(ts)
    rhos = np.array([rho(d, t) for t in ts])
    rho_evens = np.array([rho_even(d, t) for t in ts])
    tarr = np.array(ts, dtype=np.int64)
    for k in range(len(adjs)):
        lam = float(lams[k])
        kap = int(kaps[k])
        tally.graphs += 1
        _structural(tally, adjs[k], d, lam, kap, ts, nmax_fiedler, None if kappas is None else int(kappas[k]))
        if not ts:
            continue
        below = lam < rhos - TOL
        viol = below & (kap <= tarr)
        tight = np.abs(lam - rhos) <= TOL
        # the even-t formula is a separate (weaker) statement for odd t
        odd = tarr % 2 == 1
        tally.even_branch_checked += int(odd.sum())
        tally.even_branch_failed += int(np.sum(odd & (lam < rho_evens - TOL) & (kap <= tarr)))
        tally.rows += len(ts)
        tally.tight += int(tight.sum())
        if viol.any() or keep_rows or tight.any():
            g = Graph(adjs[k].astype(bool))
            gid = graph_id(g)
            grow = _graph_rows(gid, d, n, lam, kap, ts)
            for r in grow:
                if r.verdict == "VIOLATION":
                    tally.violations += 1
                    path = _dump_violation(g, r, violation_dir)
                    raise HarnessViolation(r, path)
            rows.extend(r for r in grow if keep_rows or r.verdict != "consistent")
    return rows


def _dump_violation(g: Graph, row: ThresholdReport, directory: Optional[Path]) -> Optional[Path]:
    directory = Path(directory) if directory is not None else Path.cwd()
    try:
        directory.mkdir(parents=True, exist_ok=True)
        path = directory / f"violation_d{row.d}_t{row.t}_{row.graph_id}.txt"
        path.write_text(to_edgelist(g))
        return path
    except OSError:
        return None


@dataclass
class MainTheoremReport:
    rows: list
    tally: Tally

    @property
    def ok(self) -> bool:
        return self.tally.violations == 0 and self.tally.structural_failures == 0

    def to_csv(self) -> str:
        return rows_to_csv(self.rows)


def verify_main_theorem(
    corpus: Iterable[Graph],
    t: Optional[int] = None,
    nmax_fiedler: int = 12,
    violation_dir: Optional[Path] = None,
) -> MainTheoremReport:
    """Check every graph of the corpus against rho(d, t).

    With ``t=None`` every t in [3, d-1] is checked; an explicit t may also be
    1 or 2 (the same formula, covering the earlier thresholds for t = 2).
    Raises HarnessViolation on a counterexample and GraphError on a
    non-regular member.
    """
    tally = Tally()
    rows: list[ThresholdReport] = []
    for g in corpus:
        d = is_regular(g)
        if d is None:
            raise GraphError("corpus member is not regular")
        ts = t_range(d) if t is None else ([t] if 1 <= t <= d - 1 else [])
        lam = lambda2(g) if g.n >= 2 else 0.0
        adj = np.ascontiguousarray(g.adj, dtype=np.uint8)[None]
        rows.extend(_process_batch(adj, np.array([lam]), d, ts, tally, True, nmax_fiedler, violation_dir))
    return MainTheoremReport(rows, tally)


# -- profiles ----------------------------------------------------------------


@dataclass(frozen=True)
class Profile:
    nmax_exhaustive: int = 8
    samples_per_cell: int = 20
    seed: int = 1
    dmax_extremal: int = 12
    nmax_random: int = 16
    dmax_random: int = 6
    dmin_random: int = 3
    nmax_fiedler: int = 12
    emit_rows: str = "all"

    @classmethod
    def parse(cls, text: str) -> "Profile":
        """key=value lines; '#' starts a comment. Unknown keys are errors."""
        known = {f.name: f.type for f in fields(cls)}
        values = {}
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"line {lineno}: expected key=value")
            key, val = (p.strip() for p in line.split("=", 1))
            if key not in known:
                raise ValueError(f"line {lineno}: unknown key {key!r}")
            if key == "emit_rows":
                if val not in ("all", "notable"):
                    raise ValueError(f"line {lineno}: emit_rows must be 'all' or 'notable'")
                values[key] = val
            else:
                try:
                    values[key] = int(val)
                except ValueError:
                    raise ValueError(f"line {lineno}: {key} must be an integer") from None
        p = cls(**values)
        p.validate()
        return p

    @classmethod
    def load(cls, path) -> "Profile":
        return cls.parse(Path(path).read_text())

    def validate(self) -> None:
        if not 0 <= self.nmax_exhaustive <= MAX_ENUM_N:
            raise ValueError(f"nmax_exhaustive must be in [0, {MAX_ENUM_N}]")
        if self.samples_per_cell < 0 or self.seed < 0:
            raise ValueError("samples_per_cell and seed must be non-negative")
        if self.dmax_extremal and self.dmax_extremal < 4:
            raise ValueError("dmax_extremal must be 0 (off) or at least 4")


def bundled_profile(name: str) -> Path:
    """Path of a profile shipped with the package ("ci" or "full")."""
    here = Path(__file__).parent / "profiles"
    path = here / (name if name.endswith(".cfg") else f"{name}.cfg")
    if not path.exists():
        raise FileNotFoundError(f"no bundled profile {name!r}")
    return path


def resolve_profile(arg: Optional[str]) -> Profile:
    """SPECTRALCUT_PROFILE overrides the argument; bare names map to bundled profiles."""
    chosen = os.environ.get("SPECTRALCUT_PROFILE") or arg or "ci"
    path = Path(chosen)
    if not path.exists():
        path = bundled_profile(path.name)
    return Profile.load(path)


# -- corpora -----------------------------------------------------------------


def exhaustive_cells(p: Profile) -> list[tuple[int, int]]:
    return [
        (n, d)
        for n in range(4, p.nmax_exhaustive + 1)
        for d in range(3, n)
        if (n * d) % 2 == 0
    ]


def random_cells(p: Profile) -> list[tuple[int, int]]:
    return [
        (n, d)
        for d in range(max(3, p.dmin_random), p.dmax_random + 1)
        for n in range(d + 1, p.nmax_random + 1)
        if (n * d) % 2 == 0
    ]


def run_exhaustive_cell(n: int, d: int, p: Profile, violation_dir=None) -> CellResult:
    """All connected d-regular graphs on n vertices up to the rooting symmetry."""
    tally = Tally()
    rows: list[ThresholdReport] = []
    keep = p.emit_rows == "all"
    for batch in enumerate_rows(n, d, connected_only=True, rooted=True):
        adjs = rows_to_adjacency(batch, n)
        lams = np.array([sym_eigenvalues(a)[1] for a in adjs.astype(float)])
        rows.extend(_process_batch(adjs, lams, d, t_range(d), tally, keep, p.nmax_fiedler, violation_dir))
    return CellResult("exhaustive", n, d, tally, rows)


RANDOM_BATCH = 1000


def run_random_cell(n: int, d: int, p: Profile, violation_dir=None) -> CellResult:
    tally = Tally()
    rows: list[ThresholdReport] = []
    keep = p.emit_rows == "all"
    seed = cell_seed(p.seed, n, d)
    left = p.samples_per_cell
    part = 0
    while left > 0:
        count = min(RANDOM_BATCH, left)
        adjs = random_regular_stack(n, d, cell_seed(seed, part, count), count)
        lams = batch_lambda2(adjs)
        rows.extend(_process_batch(adjs, lams, d, t_range(d), tally, keep, p.nmax_fiedler, violation_dir))
        left -= count
        part += 1
    return CellResult("random", n, d, tally, rows)


def run_extremal(p: Profile, violation_dir=None) -> CellResult:
    tally = Tally()
    rows: list[ThresholdReport] = []
    for d, t in valid_pairs(p.dmax_extremal, sharp_only=False):
        g = build_G(d, t)
        lam = lambda2(g)
        adj = np.ascontiguousarray(g.adj, dtype=np.uint8)[None]
        rows.extend(_process_batch(adj, np.array([lam]), d, t_range(d), tally, True, p.nmax_fiedler, violation_dir))
    return CellResult("extremal", 0, 0, tally, rows)


def _run_task(task):
    kind, n, d, p, vdir = task
    if kind == "exhaustive":
        return run_exhaustive_cell(n, d, p, vdir)
    if kind == "random":
        return run_random_cell(n, d, p, vdir)
    return run_extremal(p, vdir)


@dataclass
class HarnessReport:
    cells: list

    @property
    def rows(self) -> list:
        return [r for c in self.cells for r in c.rows]

    @property
    def tally(self) -> Tally:
        total = Tally()
        for c in self.cells:
            total.merge(c.tally)
        return total

    @property
    def ok(self) -> bool:
        t = self.tally
        return t.violations == 0 and t.structural_failures == 0

    def to_csv(self) -> str:
        return rows_to_csv(self.rows)

    def summary_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        names = [f.name for f in fields(Tally)]
        w.writerow(["corpus", "n", "d"] + names)
        for c in self.cells:
            vals = [getattr(c.tally, k) for k in names]
            w.writerow([c.corpus, c.n, c.d] + [_fmt_stat(v) for v in vals])
        return buf.getvalue()


def _fmt_stat(v) -> str:
    if isinstance(v, float):
        return "" if math.isinf(v) else f"{v:.9f}"
    return str(v)


def run_profile(
    p: Profile,
    jobs: int = 1,
    violation_dir: Optional[Path] = None,
    corpora: tuple = ("extremal", "exhaustive", "random"),
) -> HarnessReport:
    """Run the configured corpora. Cells are independent and seeded by
    (seed, n, d), so the result is the same for any ``jobs``."""
    tasks = []
    if "extremal" in corpora and p.dmax_extremal >= 4:
        tasks.append(("extremal", 0, 0, p, violation_dir))
    if "exhaustive" in corpora:
        tasks.extend(("exhaustive", n, d, p, violation_dir) for n, d in exhaustive_cells(p))
    if "random" in corpora and p.samples_per_cell > 0:
        tasks.extend(("random", n, d, p, violation_dir) for n, d in random_cells(p))
    if jobs <= 1 or len(tasks) <= 1:
        cells = [_run_task(t) for t in tasks]
    else:
        import multiprocessing as mp

        with mp.get_context("fork").Pool(jobs) as pool:
            cells = pool.map(_run_task, tasks, chunksize=1)
    return HarnessReport(cells)


# -- sharpness ---------------------------------------------------------------


@dataclass
class SharpnessReport:
    rows: list

    @property
    def ok(self) -> bool:
        return all(r.verdict == "tight" and r.kappa_prime == r.t for r in self.rows)

    def to_csv(self) -> str:
        return rows_to_csv(self.rows)


def verify_sharpness(dmax: int) -> SharpnessReport:
    """lambda_2(G_{d,t}) = rho(d, t) and kappa'(G_{d,t}) = t for t <= d-2."""
    if dmax < 4:
        raise ValueError("dmax must be at least 4")
    rows = []
    for d, t in valid_pairs(dmax, sharp_only=True):
        g = build_G(d, t)
        lam = lambda2(g)
        kap, _ = edge_connectivity(g)
        r = rho(d, t)
        rows.append(ThresholdReport(d, t, g.n, graph_id(g), lam, r, kap, classify(lam, r, kap, t)))
    return SharpnessReport(rows)


def probe_top_t(dmax: int) -> list[tuple[int, int, float, float, bool]]:
    """(d, t, lambda_2(G_{d,t}), rho(d,t), equal within 1e-9) for t = d-1.

    The sharpness statement only covers t <= d-2; this records what happens
    at t = d-1 without asserting it.
    """
    out = []
    for d, t in valid_pairs(dmax, sharp_only=False):
        if t != d - 1:
            continue
        lam = lambda2(build_G(d, t))
        r = rho(d, t)
        out.append((d, t, lam, r, abs(lam - r) <= TOL))
    return out


__all__ = [
    "ThresholdReport",
    "HarnessViolation",
    "GenerationError",
    "classify",
    "random_regular",
    "random_regular_stack",
    "enumerate_regular",
    "count_regular",
    "verify_main_theorem",
    "verify_sharpness",
    "probe_top_t",
    "Profile",
    "resolve_profile",
    "run_profile",
    "HarnessReport",
    "MainTheoremReport",
    "SharpnessReport",
]
