import io
import os
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from spectralcut.cli import EXIT_INPUT, EXIT_OK, EXIT_USAGE, EXIT_VIOLATION, VERBS, run
from spectralcut.extremal import build_G, build_H, rho
from spectralcut.io import from_edgelist, to_edgelist
from spectralcut.spectra import adjacency_spectrum

GOLDEN = Path(__file__).parent / "golden"


def call(*argv, stdin=""):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdin=io.StringIO(stdin), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


class TestHelp:
    def test_golden(self):
        code, out, _ = call("-h")
        assert code == EXIT_OK
        assert out == (GOLDEN / "help.txt").read_text()

    def test_lists_every_verb(self):
        _, out, _ = call("--help")
        for verb in VERBS:
            assert verb in out

    def test_no_args(self):
        code, out, err = call()
        assert code == EXIT_USAGE and out == "" and "usage:" in err

    def test_verb_help(self):
        code, out, _ = call("build", "-h")
        assert code == EXIT_OK


class TestUsageErrors:
    @pytest.mark.parametrize("argv", [["frobnicate"], ["build", "--d", "5"], ["threshold", "--d", "x", "--t", "3"],
                                      ["build", "--d", "5", "--t", "3", "--bogus"], ["build", "--d", "5", "--t", "3", "--part", "K"]])
    def test_exit_1(self, argv):
        code, out, err = call(*argv)
        assert code == EXIT_USAGE
        assert "usage:" in err and out == ""


class TestCommands:
    def test_build(self):
        code, out, _ = call("build", "--d", "5", "--t", "3", "--part", "G")
        assert code == EXIT_OK
        assert out.splitlines()[0] == "14 35"
        assert from_edgelist(out) == build_G(5, 3)
        assert from_edgelist(call("build", "--d", "6", "--t", "4", "--part", "H")[1]) == build_H(6, 4)

    def test_namespace_prefix(self):
        assert call("extremal", "build", "--d", "5", "--t", "3")[1] == call("build", "--d", "5", "--t", "3")[1]

    def test_build_bad_params(self):
        code, _, err = call("build", "--d", "4", "--t", "3")
        assert code == EXIT_INPUT and err.startswith("error:")

    def test_threshold(self):
        code, out, _ = call("threshold", "--d", "5", "--t", "3")
        assert code == EXIT_OK
        assert out.splitlines()[0] == "rho=4.274917218"
        assert "pi=4.796963318" in out
        _, out, _ = call("threshold", "--d", "6", "--t", "4")
        assert out.splitlines() == ["rho=5.000000000", "rho_even=5.000000000", "cioaba_weak=4.857142857"]

    def test_threshold_bad(self):
        assert call("threshold", "--d", "2", "--t", "1")[0] == EXIT_INPUT
        assert call("threshold", "--d", "3", "--t", "100")[0] == EXIT_INPUT

    def test_spectrum_round_trip(self):
        g = build_G(5, 3)
        code, out, _ = call("spectrum", stdin=to_edgelist(g))
        vals = [float(x) for x in out.split()]
        assert code == EXIT_OK and len(vals) == 14
        assert np.allclose(vals, adjacency_spectrum(g).values, atol=1e-9)
        assert abs(vals[1] - rho(5, 3)) < 1e-9

    def test_laplacian(self):
        _, out, _ = call("spectrum", "--laplacian", stdin="4 4\n0 1\n1 2\n2 3\n0 3\n")
        assert out == "4.000000000\n2.000000000\n2.000000000\n0.000000000\n"

    def test_connectivity(self):
        _, out, _ = call("connectivity", stdin=to_edgelist(build_G(7, 4)))
        lines = dict(line.split("=") for line in out.splitlines())
        assert lines["kappa_prime"] == lines["r"] == "4"
        assert len(lines["side"].split(",")) == 8

    def test_graph6_input(self):
        _, out, _ = call("connectivity", stdin="C~\n")
        assert out.splitlines()[0] == "kappa_prime=3"

    def test_quotient(self):
        _, out, _ = call("quotient", "--partition", "0,2;1,3", stdin="4 4\n0 1\n1 2\n2 3\n0 3\n")
        assert out.splitlines() == [
            "0.000000000 2.000000000",
            "2.000000000 0.000000000",
            "equitable=yes",
            "eigenvalues=2.000000000 -2.000000000",
            "interlaces=yes",
        ]

    def test_quotient_bad_partition(self):
        code, _, err = call("quotient", "--partition", "0,1;1,2", stdin="3 2\n0 1\n1 2\n")
        assert code == EXIT_INPUT and "error:" in err

    @pytest.mark.parametrize("stdin", ["", "3 1\n0 0\n", "garbage here\n"])
    def test_bad_graph(self, stdin):
        assert call("spectrum", stdin=stdin)[0] == EXIT_INPUT

    def test_table(self):
        code, out, _ = call("table", "--dmax", "7")
        assert code == EXIT_OK
        # rho by hand: (3+sqrt(97))/2, (4+sqrt(68))/2, (3+9)/2, (4+sqrt(52))/2; pi(7) via sympy
        assert out == (
            "d,t,rho,pi,lambda2,kappa_prime\n"
            "5,3,4.274917218,4.796963318,4.274917218,3\n"
            "5,4,3.828427125,4.796963318,3.828427125,4\n"
            "6,4,5.000000000,,5.000000000,4\n"
            "7,3,6.424428901,6.826280692,6.424428901,3\n"
            "7,4,6.123105626,6.826280692,6.123105626,4\n"
            "7,5,6.000000000,6.826280692,6.000000000,5\n"
            "7,6,5.605551275,6.826280692,5.605551275,6\n"
        )

    def test_table_rejects_small_dmax(self):
        assert call("table", "--dmax", "3")[0] == EXIT_INPUT

    def test_sweep(self, tmp_path):
        out_file = tmp_path / "sweep.csv"
        code, out, _ = call("prooflab", "sweep", "--dmax", "7", "--n", "20", "--out", str(out_file))
        assert code == EXIT_OK and out == ""
        assert out_file.read_text().startswith("family,passed,failed,skipped,worst_margin\n")

    def test_verify_sharpness(self):
        code, out, _ = call("harness", "verify", "--sharpness", "--dmax", "8")
        assert code == EXIT_OK
        assert all(ln.endswith(",tight") for ln in out.splitlines()[1:])

    def test_verify_profile(self, tmp_path, monkeypatch):
        monkeypatch.delenv("SPECTRALCUT_PROFILE", raising=False)
        cfg = tmp_path / "tiny.cfg"
        cfg.write_text("nmax_exhaustive=6\nsamples_per_cell=5\nseed=2\ndmax_extremal=6\nnmax_random=10\ndmax_random=4\n")
        code, out, err = call("verify", "--profile", str(cfg))
        assert code == EXIT_OK
        assert out.startswith("d,t,n,graph_id,lambda2,rho,kappa_prime,verdict\n")
        assert err.startswith("corpus,n,d,")
        code2, out2, _ = call("verify", "--profile", str(cfg), "--jobs", "2")
        assert out2 == out

    def test_verify_violation_exit(self, tmp_path, monkeypatch):
        from spectralcut import harness

        monkeypatch.setattr(harness, "rho", lambda d, t: 100.0)
        cfg = tmp_path / "x.cfg"
        cfg.write_text("nmax_exhaustive=0\nsamples_per_cell=0\ndmax_extremal=5\n")
        code, _, err = call("verify", "--profile", str(cfg), "--out", str(tmp_path / "r.csv"))
        assert code == EXIT_VIOLATION
        assert "offending graph written to" in err
        assert list(tmp_path.glob("violation_*.txt"))

    def test_missing_profile(self, monkeypatch):
        monkeypatch.delenv("SPECTRALCUT_PROFILE", raising=False)
        assert call("verify", "--profile", "no_such_profile")[0] == EXIT_INPUT


def test_console_script_pipeline():
    env = {**os.environ, "PYTHONPATH": os.pathsep.join(sys.path)}
    build = subprocess.run([sys.executable, "-m", "spectralcut.cli", "build", "--d", "6", "--t", "4"],
                           capture_output=True, text=True, env=env, check=True)
    conn = subprocess.run([sys.executable, "-m", "spectralcut.cli", "connectivity"], input=build.stdout,
                          capture_output=True, text=True, env=env)
    assert conn.returncode == 0
    assert conn.stdout.startswith("kappa_prime=4\n")
