"""Numerical checks of the matrices and inequalities in the proof that
lambda_2 < rho(d, t) forces kappa' >= t+1.

Matrices are assembled from exact rationals so that the row-sum hypothesis of
the tridiagonal reduction holds exactly; they are converted to floats only
when eigenvalues are taken.

Naming follows the proof: S and its complement are the sides of a minimum
cut (sizes s, s'), V_2 and V_3 are the endpoints of the t cut edges on either
side (sizes alpha, beta), with k and l edges inside V_2 and V_3.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional

import numpy as np

from .extremal import rho_even, rho_odd
from .partitions import (
    TridiagonalRowSum,
    tridiagonal_eigenvalues,
    tridiagonal_reduce_entries,
)
from .spectra import sym_eigenvalues

TOL = 1e-9
ENDPOINT_TOL = 1e-12


class InfeasibleParams(ValueError):
    """Parameters that would give a negative quotient entry or edge count."""


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


# -- Q_0 and the two-block bound ---------------------------------------------


def q0_matrix(d, r, s, s_prime) -> list[list[Fraction]]:
    if s < 1 or s_prime < 1:
        raise ValueError("side sizes must be positive")
    if r < 0:
        raise ValueError("cut size must be non-negative")
    a, b = Fraction(r, 1) / s, Fraction(r, 1) / s_prime
    return [[d - a, a], [b, d - b]]


def q0_lambda2(d, r, s, s_prime) -> float:
    """d - r/s - r/s'"""
    if s < 1 or s_prime < 1:
        raise ValueError("side sizes must be positive")
    return float(d - Fraction(r) / s - Fraction(r) / s_prime)


def matrix_lambda1(m) -> float:
    """Largest eigenvalue of a tridiagonal matrix with non-negative off-diagonal products."""
    return float(tridiagonal_eigenvalues(np.array(m, dtype=float))[0])


# -- Case 1 -----------------------------------------------------------------


@dataclass(frozen=True)
class CheckResult:
    passed: bool
    margin: float


def case1_chain_check(d: int, t: int) -> CheckResult:
    """d - 2(t-1)/(d+1) > rho_even(d, t), plus [4(t-1)/(d+1) - 2]^2 + 4 > 0.

    The margin is the gap in the first inequality.
    """
    x = 4 * (t - 1) / (d + 1)
    square = x * x - 4 * x + 8
    lhs = d - 2 * (t - 1) / (d + 1)
    gap = lhs - rho_even(d, t)
    completed = (x - 2) ** 2 + 4
    ok = gap > 0 and square > 0 and abs(square - completed) <= 1e-9 * max(1.0, abs(square))
    return CheckResult(ok, gap)


# -- Cases 2 and 3 -----------------------------------------------------------


@dataclass(frozen=True)
class CaseTwoParams:
    """Parameters of the 4-block quotient Q_1. k and l may be half-integers
    (Case 3 writes them through the slacks eps, eps')."""

    d: int
    t: int
    s: int
    s_prime: int
    alpha: int
    beta: int
    k: Fraction
    l: Fraction
    eps: Optional[Fraction] = None
    eps_prime: Optional[Fraction] = None

    def __post_init__(self):
        object.__setattr__(self, "k", _frac(self.k))
        object.__setattr__(self, "l", _frac(self.l))
        if not 1 <= self.alpha <= min(self.t, self.s):
            raise InfeasibleParams(f"alpha={self.alpha} outside [1, min(t, s)]")
        if not 1 <= self.beta <= min(self.t, self.s_prime):
            raise InfeasibleParams(f"beta={self.beta} outside [1, min(t, s')]")
        if self.s - self.alpha <= 0 or self.s_prime - self.beta <= 0:
            raise InfeasibleParams("V_1 and V_4 must be non-empty")
        if self.k < 0 or self.l < 0:
            raise InfeasibleParams(f"negative internal edge count (k={self.k}, l={self.l})")

    @classmethod
    def case2(cls, d: int, t: int, alpha: int, beta: int) -> "CaseTwoParams":
        """s = s' = d+1 and k = alpha(alpha-1)/2 - t/2 (integral only for even t)."""
        if t % 2:
            raise InfeasibleParams("Case 2 needs even t")
        k = Fraction(alpha * (alpha - 1), 2) - Fraction(t, 2)
        l = Fraction(beta * (beta - 1), 2) - Fraction(t, 2)
        return cls(d, t, d + 1, d + 1, alpha, beta, k, l)

    @classmethod
    def case3(cls, d: int, t: int, alpha: int, beta: int, eps=0, eps_prime=0) -> "CaseTwoParams":
        """s = s' = d+2 and k = alpha(alpha-1)/2 - t/2 - alpha/2 + eps, 0 <= eps <= alpha/2."""
        if t % 2 == 0:
            raise InfeasibleParams("Case 3 needs odd t")
        eps, eps_prime = _frac(eps), _frac(eps_prime)
        if not 0 <= eps <= Fraction(alpha, 2) or not 0 <= eps_prime <= Fraction(beta, 2):
            raise InfeasibleParams("slack outside [0, block size / 2]")
        k = Fraction(alpha * (alpha - 1), 2) - Fraction(t, 2) - Fraction(alpha, 2) + eps
        l = Fraction(beta * (beta - 1), 2) - Fraction(t, 2) - Fraction(beta, 2) + eps_prime
        return cls(d, t, d + 2, d + 2, alpha, beta, k, l, eps, eps_prime)

    @property
    def A(self) -> Fraction:
        return 2 * (self.eps or 0) / Fraction(self.alpha)

    @property
    def B(self) -> Fraction:
        return 2 * (self.eps_prime or 0) / Fraction(self.beta)


def q1_matrix(p: CaseTwoParams) -> list[list[Fraction]]:
    """The 4x4 quotient over (V_1, V_2, V_3, V_4); every row sums to d."""
    d, t, a, b = p.d, p.t, p.alpha, p.beta
    x = d * a - 2 * p.k - t  # edges between V_1 and V_2
    y = d * b - 2 * p.l - t  # edges between V_3 and V_4
    sa, sb = p.s - a, p.s_prime - b
    m = [
        [(d * sa - x) / sa, x / sa, Fraction(0), Fraction(0)],
        [x / a, 2 * p.k / a, Fraction(t, a), Fraction(0)],
        [Fraction(0), Fraction(t, b), 2 * p.l / b, y / b],
        [Fraction(0), Fraction(0), y / sb, (d * sb - y) / sb],
    ]
    if any(v < 0 for row in m for v in row):
        raise InfeasibleParams("Q_1 has a negative entry")
    return m


def _tridiag(rows) -> TridiagonalRowSum:
    return TridiagonalRowSum.from_matrix(rows)


def q1_reduced(p: CaseTwoParams) -> list[list[Fraction]]:
    """The 3x3 reduction of Q_1, exact."""
    diag, sup, sub = tridiagonal_reduce_entries(_tridiag(q1_matrix(p)))
    z = Fraction(0)
    return [
        [diag[0], sup[0], z],
        [sub[0], diag[1], sup[1]],
        [z, sub[1], diag[2]],
    ]


def q1_prime_even(d: int, t: int, alpha: int, beta: int) -> list[list[Fraction]]:
    """Reduced matrix with s = s' = d+1: corners -1, off-diagonals d-alpha+1, d-beta+1."""
    ta, tb = Fraction(t, alpha), Fraction(t, beta)
    return [
        [Fraction(-1), ta, Fraction(0)],
        [Fraction(d - alpha + 1), d - ta - tb, Fraction(d - beta + 1)],
        [Fraction(0), tb, Fraction(-1)],
    ]


def q1_prime_odd(d: int, t: int, alpha: int, beta: int, A=0, B=0) -> list[list[Fraction]]:
    """Reduced matrix with s = s' = d+2 and slack ratios A = 2 eps/alpha, B = 2 eps'/beta."""
    A, B = _frac(A), _frac(B)
    ta, tb = Fraction(t, alpha), Fraction(t, beta)
    return [
        [-2 + (d + 2) * A / (d + 2 - alpha), ta, Fraction(0)],
        [d - alpha + 2 - A, d - ta - tb, d - beta + 2 - B],
        [Fraction(0), tb, -2 + (d + 2) * B / (d + 2 - beta)],
    ]


def _check_block_sizes(t: int, alpha, beta) -> None:
    if not (1 <= alpha <= t and 1 <= beta <= t):
        raise ValueError(f"need 1 <= alpha, beta <= t (alpha={alpha}, beta={beta}, t={t})")


def _closed_form(d, t, alpha, beta, shift: int) -> float:
    # shift = 1: corners -1 (even t); shift = 2: corners -2 (odd t)
    _check_block_sizes(t, alpha, beta)
    u = d - shift - t / alpha - t / beta
    disc = u * u + 4 * (shift * d + d * t / alpha + d * t / beta - 2 * t)
    if disc < 0:
        raise ValueError("negative discriminant")
    return (u + math.sqrt(disc)) / 2


def largest_root_even(d: int, t: int, alpha, beta) -> float:
    return _closed_form(d, t, alpha, beta, 1)


def largest_root_odd(d: int, t: int, alpha, beta) -> float:
    return _closed_form(d, t, alpha, beta, 2)


def identity_8t(d, t, alpha, beta, odd: bool = False) -> float:
    """(d+c+u)^2 - (d-c-u)^2 - 4(c d + d u' - 2t) with c = 2 (odd) or 1 (even),
    u = t/(alpha+1) + t/beta and d u' = dt/(alpha+1) + dt/beta. Equals 8t."""
    c = 2 if odd else 1
    u = t / (alpha + 1) + t / beta
    return (d + c + u) ** 2 - (d - c - u) ** 2 - 4 * (c * d + d * t / (alpha + 1) + d * t / beta - 2 * t)


def _det3(m) -> Fraction:
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


def charpoly_at(m, x) -> Fraction:
    """det(x I - m) for a 3x3 matrix."""
    x = _frac(x)
    shifted = [[(x if i == j else 0) - m[i][j] for j in range(3)] for i in range(3)]
    return _det3(shifted)


def g_at_d_minus_2(d: int, t: int, alpha: int, beta: int, B=0) -> Fraction:
    """g(d-2), where g is the characteristic polynomial at A = 0 (exact)."""
    return charpoly_at(q1_prime_odd(d, t, alpha, beta, 0, B), d - 2)


@dataclass(frozen=True)
class PerturbationResult:
    passed: bool
    lambda_ab: float
    lambda_0b: float
    lambda_00: float
    g_value: float

    @property
    def margin(self) -> float:
        return min(self.lambda_ab - self.lambda_0b, self.lambda_0b - self.lambda_00, -self.g_value)


def case3_perturbed_root_check(d: int, t: int, alpha: int, beta: int, A, B) -> PerturbationResult:
    """lambda_1(A, B) >= lambda_1(0, B) >= lambda_1(0, 0) = the odd closed form,
    and g(d-2) <= 0 for the same alpha, beta, B."""
    A, B = _frac(A), _frac(B)
    if not (0 <= A <= 1 and 0 <= B <= 1):
        raise InfeasibleParams("A and B must lie in [0, 1]")
    _check_block_sizes(t, alpha, beta)
    if t >= d:
        raise InfeasibleParams("need t < d")
    lam_ab = matrix_lambda1(q1_prime_odd(d, t, alpha, beta, A, B))
    lam_0b = matrix_lambda1(q1_prime_odd(d, t, alpha, beta, 0, B))
    lam_00 = largest_root_odd(d, t, alpha, beta)
    g = g_at_d_minus_2(d, t, alpha, beta, B)
    ok = lam_ab >= lam_0b - TOL and lam_0b >= lam_00 - TOL and g <= 0
    return PerturbationResult(ok, lam_ab, lam_0b, lam_00, float(g))


def perron_root(m) -> float:
    """Spectral radius of a non-negative matrix (its Perron root)."""
    return float(np.max(np.abs(np.linalg.eigvals(np.asarray(m, dtype=float)))))


def perron_domination_check(m1, m2) -> CheckResult:
    """If m1 >= m2 entrywise, then lambda_1(m1) >= lambda_1(m2).

    Both need non-negative off-diagonal entries; shifting by
    Delta = 1 + max |entry| then makes them non-negative, and lambda_1 is the
    Perron root minus Delta.
    """
    a = np.asarray(m1, dtype=float)
    b = np.asarray(m2, dtype=float)
    if a.shape != b.shape or a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("need square matrices of the same order")
    if np.any(a - b < -1e-12):
        raise ValueError("m1 does not dominate m2 entrywise")
    off = ~np.eye(a.shape[0], dtype=bool)
    if np.any(b[off] < 0):
        raise ValueError("off-diagonal entries must be non-negative")
    delta = 1.0 + max(np.abs(a).max(), np.abs(b).max())
    eye = np.eye(a.shape[0])
    l1 = perron_root(a + delta * eye) - delta
    l2 = perron_root(b + delta * eye) - delta
    return CheckResult(l1 >= l2 - TOL, l1 - l2)


# -- sweeps ------------------------------------------------------------------


@dataclass
class FamilyTally:
    family: str
    passed: int = 0
    failed: int = 0
    skipped: int = 0
    worst_margin: float = math.inf
    failures: list = field(default_factory=list)

    def record(self, ok: bool, margin: float, where=None) -> None:
        if ok:
            self.passed += 1
        else:
            self.failed += 1
            self.failures.append(where)
        if margin < self.worst_margin:
            self.worst_margin = margin

    def skip(self) -> None:
        self.skipped += 1

    def merge(self, other: "FamilyTally") -> None:
        self.passed += other.passed
        self.failed += other.failed
        self.skipped += other.skipped
        self.worst_margin = min(self.worst_margin, other.worst_margin)
        self.failures.extend(other.failures)


@dataclass
class SweepReport:
    families: dict = field(default_factory=dict)

    def tally(self, name: str) -> FamilyTally:
        if name not in self.families:
            self.families[name] = FamilyTally(name)
        return self.families[name]

    @property
    def ok(self) -> bool:
        return all(f.failed == 0 for f in self.families.values())

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["family", "passed", "failed", "skipped", "worst_margin"])
        for f in self.families.values():
            margin = "" if math.isinf(f.worst_margin) else f"{f.worst_margin:.9e}"
            w.writerow([f.family, f.passed, f.failed, f.skipped, margin])
        return buf.getvalue()


def even_grid(dmax: int) -> Iterable[tuple[int, int, int, int]]:
    """(d, t, alpha, beta) with even t in [3, d-1] and 1 <= alpha, beta <= t."""
    for d in range(4, dmax + 1):
        for t in range(4, d, 2):
            for a in range(1, t + 1):
                for b in range(1, t + 1):
                    yield d, t, a, b


def odd_grid(dmax: int) -> Iterable[tuple[int, int, int, int]]:
    """(d, t, alpha, beta) with odd d, odd t in [3, d-1], 1 <= alpha, beta <= t."""
    for d in range(5, dmax + 1, 2):
        for t in range(3, d, 2):
            for a in range(1, t + 1):
                for b in range(1, t + 1):
                    yield d, t, a, b


def _equality(tally: FamilyTally, err: float, tol: float, where) -> None:
    tally.record(err <= tol, tol - err, where)


def _closed_form_families(report: SweepReport, dmax: int) -> None:
    specs = [
        ("even", even_grid, largest_root_even, q1_prime_even, rho_even),
        ("odd", odd_grid, largest_root_odd, q1_prime_odd, rho_odd),
    ]
    for tag, grid, closed, matrix, rho_branch in specs:
        cf = report.tally(f"closed_form_{tag}")
        mono_a = report.tally(f"monotone_alpha_{tag}")
        mono_b = report.tally(f"monotone_beta_{tag}")
        ends = report.tally(f"endpoint_{tag}")
        ident = report.tally(f"identity_8t_{tag}")
        for d, t, a, b in grid(dmax):
            v = closed(d, t, a, b)
            _equality(cf, abs(v - matrix_lambda1(matrix(d, t, a, b))), TOL, (d, t, a, b))
            if a < t:
                step = v - closed(d, t, a + 1, b)
                mono_a.record(step >= -ENDPOINT_TOL, step, (d, t, a, b))
                _equality(ident, abs(identity_8t(d, t, a, b, tag == "odd") - 8 * t), TOL, (d, t, a, b))
            if b < t:
                step = v - closed(d, t, a, b + 1)
                mono_b.record(step >= -ENDPOINT_TOL, step, (d, t, a, b))
            if a == b == t:
                _equality(ends, abs(v - rho_branch(d, t)), ENDPOINT_TOL, (d, t))


def _reduction_families(report: SweepReport, dmax: int) -> None:
    red_e = report.tally("reduction_even")
    spec_e = report.tally("reduction_spectrum_even")
    for d, t, a, b in even_grid(dmax):
        try:
            p = CaseTwoParams.case2(d, t, a, b)
            q = q1_matrix(p)
        except InfeasibleParams:
            red_e.skip()
            spec_e.skip()
            continue
        red = q1_reduced(p)
        red_e.record(red == q1_prime_even(d, t, a, b), 0.0, (d, t, a, b))
        _spectrum_identity(spec_e, q, red, d, (d, t, a, b))
    red_o = report.tally("reduction_odd")
    spec_o = report.tally("reduction_spectrum_odd")
    for d, t, a, b in odd_grid(dmax):
        for eps, eps_p in ((0, 0), (Fraction(a, 2), Fraction(b, 4))):
            try:
                p = CaseTwoParams.case3(d, t, a, b, eps, eps_p)
                q = q1_matrix(p)
            except InfeasibleParams:
                red_o.skip()
                spec_o.skip()
                continue
            red = q1_reduced(p)
            red_o.record(red == q1_prime_odd(d, t, a, b, p.A, p.B), 0.0, (d, t, a, b, eps, eps_p))
            _spectrum_identity(spec_o, q, red, d, (d, t, a, b, eps, eps_p))


def _spectrum_identity(tally: FamilyTally, q, red, d, where) -> None:
    full = tridiagonal_eigenvalues(np.array(q, dtype=float)).values
    part = tridiagonal_eigenvalues(np.array(red, dtype=float)).values
    expect = np.sort(np.append(part, d))[::-1]
    err = float(np.max(np.abs(full - expect)))
    _equality(tally, err, 1e-7, where)


def _case1_family(report: SweepReport, dmax: int) -> None:
    tally = report.tally("case1_chain")
    for d in range(4, max(dmax, 20) + 1):
        for t in range(3, d):
            r = case1_chain_check(d, t)
            tally.record(r.passed, r.margin, (d, t))


def random_case3_tuple(rng: np.random.Generator, dmax: int):
    """A random (d, t, alpha, beta, A, B) whose Case-3 parameters are feasible,
    or None if the draw is infeasible."""
    d = int(rng.choice(np.arange(5, dmax + 1, 2)))
    t = int(rng.choice(np.arange(3, d, 2)))
    a = int(rng.integers(1, t + 1))
    b = int(rng.integers(1, t + 1))
    A = Fraction(float(rng.random()))
    B = Fraction(float(rng.random()))
    try:
        p = CaseTwoParams.case3(d, t, a, b, A * a / 2, B * b / 2)
        q1_matrix(p)
    except InfeasibleParams:
        return None
    return d, t, a, b, A, B


def _perturbation_family(report: SweepReport, dmax: int, samples: int, rng) -> None:
    tally = report.tally("case3_perturbation")
    gfam = report.tally("case3_g_at_d_minus_2")
    done = 0
    while done < samples:
        draw = random_case3_tuple(rng, dmax)
        if draw is None:
            tally.skip()
            continue
        r = case3_perturbed_root_check(*draw)
        tally.record(r.passed, min(r.lambda_ab - r.lambda_0b, r.lambda_0b - r.lambda_00), draw)
        gfam.record(r.g_value <= 0, -r.g_value, draw)
        done += 1


def _perron_family(report: SweepReport, dmax: int, samples: int, rng) -> None:
    tally = report.tally("perron_domination")
    for d, t, a, b in even_grid(min(dmax, 12)):
        try:
            p = CaseTwoParams(d, t, d + 5, d + 5, a, b,
                              CaseTwoParams.case2(d, t, a, b).k, CaseTwoParams.case2(d, t, a, b).l)
            q = q1_reduced(p)
        except InfeasibleParams:
            tally.skip()
            continue
        r = perron_domination_check(np.array(q, dtype=float), np.array(q1_prime_even(d, t, a, b), dtype=float))
        tally.record(r.passed, r.margin, (d, t, a, b))
    for _ in range(samples):
        m2 = rng.random((3, 3)) * 5
        m2[np.diag_indices(3)] -= 3  # negative diagonals are allowed
        m1 = m2 + rng.random((3, 3)) * rng.integers(0, 2, (3, 3))
        r = perron_domination_check(m1, m2)
        tally.record(r.passed, r.margin, "random")


def _q0_family(report: SweepReport, dmax: int) -> None:
    tally = report.tally("q0_eigenvalues")
    for d in range(3, dmax + 1):
        for r in range(0, d):
            for s in (d + 1, d + 2, 2 * d):
                q = q0_matrix(d, r, s, s + 1)
                # Q_0 is similar to a symmetric matrix via the block sizes
                sym = np.array([[float(q[0][0]), math.sqrt(float(q[0][1] * q[1][0]))],
                                [math.sqrt(float(q[0][1] * q[1][0])), float(q[1][1])]])
                ev = sym_eigenvalues(sym).values
                err = max(abs(ev[0] - d), abs(ev[1] - q0_lambda2(d, r, s, s + 1)))
                _equality(tally, err, TOL, (d, r, s))


def sweep(dmax: int = 15, samples: int = 500, seed: int = 0) -> SweepReport:
    """Run every check family. Deterministic for a fixed seed."""
    if dmax < 5:
        raise ValueError("dmax must be at least 5")
    rng = np.random.default_rng(seed)
    report = SweepReport()
    _q0_family(report, dmax)
    _case1_family(report, dmax)
    _closed_form_families(report, dmax)
    _reduction_families(report, dmax)
    _perturbation_family(report, dmax, samples, rng)
    _perron_family(report, dmax, samples, rng)
    return report
