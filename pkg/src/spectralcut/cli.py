"""Command-line entry point.

Graphs travel between commands as the canonical edge list on stdin/stdout;
floats are printed with 9 decimals. Exit status: 0 success, 1 usage error,
2 verification failure, 3 numeric or input error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence, TextIO

from . import extremal, harness, prooflab
from .connectivity import edge_connectivity, vertex_connectivity
from .graph import GraphError
from .io import read_graph, to_edgelist
from .partitions import (
    PartitionError,
    VertexPartition,
    interlaces,
    is_equitable,
    quotient_matrix,
)
from .spectra import ConvergenceError, format_float, adjacency_spectrum, laplacian_spectrum

EXIT_OK, EXIT_USAGE, EXIT_VIOLATION, EXIT_INPUT = 0, 1, 2, 3
NAMESPACES = ("extremal", "prooflab", "harness")
VERBS = ("build", "spectrum", "connectivity", "quotient", "threshold", "verify", "sweep", "table")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # fixed width keeps the help text independent of the terminal
    def __init__(self, *args, **kwargs):
        kwargs.setdefault("formatter_class", lambda prog: argparse.HelpFormatter(prog, width=80))
        super().__init__(*args, **kwargs)

    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(
        prog="spectralcut",
        description="Spectral thresholds for edge-connectivity of regular graphs. "
        "A verb may be prefixed by extremal, prooflab or harness.",
    )
    sub = p.add_subparsers(dest="verb", metavar="VERB", parser_class=_Parser)

    s = sub.add_parser("build", help="emit H_{d,t} or G_{d,t} as an edge list")
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--t", type=int, required=True)
    s.add_argument("--part", choices=("H", "G"), default="G")

    s = sub.add_parser("spectrum", help="eigenvalues of the graph on stdin")
    s.add_argument("--laplacian", action="store_true", help="Laplacian instead of adjacency")

    sub.add_parser("connectivity", help="kappa', a minimum cut, and kappa of the graph on stdin")

    s = sub.add_parser("quotient", help="quotient matrix of the graph on stdin")
    s.add_argument("--partition", required=True, help='blocks like "0,1,2;3,4;5"')

    s = sub.add_parser("threshold", help="rho(d,t) and the related bounds")
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--t", type=int, required=True)

    s = sub.add_parser("verify", help="run the verification harness (CSV report)")
    s.add_argument("--profile", help="profile file or bundled name (ci, full)")
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--out", help="write the CSV here instead of stdout")
    s.add_argument("--sharpness", action="store_true", help="only the G_{d,t} sharpness table")
    s.add_argument("--dmax", type=int, default=12, help="largest d for --sharpness")

    s = sub.add_parser("sweep", help="run the proof-formula check families (CSV report)")
    s.add_argument("--dmax", type=int, default=15)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--n", type=int, default=500, help="random samples per sampled family")
    s.add_argument("--out")

    s = sub.add_parser("table", help="CSV of thresholds and extremal-graph values")
    s.add_argument("--dmax", type=int, default=12)
    return p


def _read_stdin_graph(stdin: TextIO):
    text = stdin.read()
    if not text.strip():
        raise GraphError("no graph on stdin")
    return read_graph(text)


def _emit(text: str, out: Optional[str], stdout: TextIO) -> None:
    if out:
        Path(out).write_text(text)
    else:
        stdout.write(text)


def _cmd_build(a, stdin, stdout, stderr) -> int:
    g = extremal.build_H(a.d, a.t) if a.part == "H" else extremal.build_G(a.d, a.t)
    stdout.write(to_edgelist(g))
    return EXIT_OK


def _cmd_spectrum(a, stdin, stdout, stderr) -> int:
    g = _read_stdin_graph(stdin)
    spec = laplacian_spectrum(g) if a.laplacian else adjacency_spectrum(g)
    stdout.write(spec.to_text())
    return EXIT_OK


def _cmd_connectivity(a, stdin, stdout, stderr) -> int:
    g = _read_stdin_graph(stdin)
    value, cert = edge_connectivity(g)
    stdout.write(f"kappa_prime={value}\n")
    stdout.write(f"r={cert.r}\n")
    stdout.write("side=" + ",".join(map(str, cert.side)) + "\n")
    stdout.write(f"kappa={vertex_connectivity(g)}\n")
    return EXIT_OK


def _cmd_quotient(a, stdin, stdout, stderr) -> int:
    g = _read_stdin_graph(stdin)
    p = VertexPartition.parse(a.partition)
    q = quotient_matrix(g, p)
    for row in q.to_array():
        stdout.write(" ".join(format_float(x) for x in row) + "\n")
    stdout.write(f"equitable={'yes' if is_equitable(g, p) else 'no'}\n")
    ev = q.eigenvalues()
    stdout.write("eigenvalues=" + " ".join(format_float(x) for x in ev) + "\n")
    if q.order < g.n:
        ok = interlaces(adjacency_spectrum(g), ev)
        stdout.write(f"interlaces={'yes' if ok else 'no'}\n")
    return EXIT_OK


def _cmd_threshold(a, stdin, stdout, stderr) -> int:
    d, t = a.d, a.t
    if d < 3 or t < 1:
        raise extremal.ParameterError("need d >= 3 and t >= 1")
    stdout.write(f"rho={format_float(extremal.rho(d, t))}\n")
    stdout.write(f"rho_even={format_float(extremal.rho_even(d, t))}\n")
    if t % 2:
        stdout.write(f"rho_odd={format_float(extremal.rho_odd(d, t))}\n")
    stdout.write(f"cioaba_weak={format_float(extremal.cioaba_weak_bound(d, t))}\n")
    if d % 2:
        stdout.write(f"pi={format_float(extremal.pi(d))}\n")
    return EXIT_OK


def _cmd_verify(a, stdin, stdout, stderr) -> int:
    if a.sharpness:
        rep = harness.verify_sharpness(a.dmax)
        _emit(rep.to_csv(), a.out, stdout)
        return EXIT_OK if rep.ok else EXIT_VIOLATION
    profile = harness.resolve_profile(a.profile)
    vdir = Path(a.out).parent if a.out else None
    try:
        rep = harness.run_profile(profile, jobs=max(1, a.jobs), violation_dir=vdir)
    except harness.HarnessViolation as e:
        stderr.write(f"{e}\n")
        if e.path is not None:
            stderr.write(f"offending graph written to {e.path}\n")
        return EXIT_VIOLATION
    _emit(rep.to_csv(), a.out, stdout)
    stderr.write(rep.summary_csv())
    if not rep.ok:
        stderr.write("structural check failed\n")
        return EXIT_VIOLATION
    return EXIT_OK


def _cmd_sweep(a, stdin, stdout, stderr) -> int:
    rep = prooflab.sweep(a.dmax, a.n, a.seed)
    _emit(rep.to_csv(), a.out, stdout)
    return EXIT_OK if rep.ok else EXIT_VIOLATION


def _cmd_table(a, stdin, stdout, stderr) -> int:
    from .spectra import lambda2

    if a.dmax < 4:
        raise extremal.ParameterError("dmax must be at least 4")
    stdout.write("d,t,rho,pi,lambda2,kappa_prime\n")
    for d, t in extremal.valid_pairs(a.dmax, sharp_only=False):
        g = extremal.build_G(d, t)
        p = format_float(extremal.pi(d)) if d % 2 else ""
        lam = lambda2(g)
        kap, _ = edge_connectivity(g)
        stdout.write(f"{d},{t},{format_float(extremal.rho(d, t))},{p},{format_float(lam)},{kap}\n")
    return EXIT_OK


COMMANDS = {
    "build": _cmd_build,
    "spectrum": _cmd_spectrum,
    "connectivity": _cmd_connectivity,
    "quotient": _cmd_quotient,
    "threshold": _cmd_threshold,
    "verify": _cmd_verify,
    "sweep": _cmd_sweep,
    "table": _cmd_table,
}


def run(
    argv: Sequence[str],
    stdin: Optional[TextIO] = None,
    stdout: Optional[TextIO] = None,
    stderr: Optional[TextIO] = None,
) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    argv = list(argv)
    if argv and argv[0] in NAMESPACES:
        argv = argv[1:]
    parser = build_parser()
    if not argv or argv[0] in ("-h", "--help"):
        stream = stdout if argv else stderr
        stream.write(parser.format_help())
        return EXIT_OK if argv else EXIT_USAGE
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        stderr.write(parser.format_usage())
        stderr.write(f"{e}\n")
        return EXIT_USAGE
    except SystemExit as e:  # --help inside a verb
        return EXIT_OK if not e.code else EXIT_USAGE
    if args.verb is None:
        stderr.write(parser.format_help())
        return EXIT_USAGE
    try:
        return COMMANDS[args.verb](args, stdin, stdout, stderr)
    except (GraphError, PartitionError, extremal.ParameterError, ConvergenceError,
            ValueError, ArithmeticError, OSError) as e:
        stderr.write(f"error: {e}\n")
        return EXIT_INPUT


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
