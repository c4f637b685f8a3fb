import json
import subprocess
import sys

import numpy as np
import pytest

import revspec as rs
from revspec.cli import run


def invoke(*argv, capsys=None):
    return run(list(argv))


class TestExitCodes:
    def test_unknown_subcommand(self, capsys):
        assert run(["bogus"]) == 1
        assert "usage" in capsys.readouterr().err

    def test_unknown_flag(self, capsys):
        assert run(["catenoid", "--r1", "1", "--r2", "1", "--h", "1",
                    "--frobnicate"]) == 1
        assert "usage" in capsys.readouterr().err

    def test_bad_value(self, capsys):
        assert run(["catenoid", "--r1", "-1", "--r2", "1", "--h", "1"]) == 1

    def test_missing_curve_file(self, capsys):
        assert run(["spectrum", "--curve", "no-such.json", "--j", "3"]) == 1
        assert "file not found" in capsys.readouterr().err

    def test_help_exits_zero(self, capsys):
        assert run(["--help"]) == 0


class TestCatenoid:
    def test_classification_json(self, capsys):
        assert run(["catenoid", "--r1", "1", "--r2", "1", "--h", "0.5"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["classification"] == "catenoid-unique"
        assert doc["solutions"][0]["branch"] == "outer"
        assert doc["solutions"][0]["c"] == pytest.approx(0.9675208457243681,
                                                         rel=1e-9)
        assert doc["discs_area"] == pytest.approx(2 * np.pi)

    def test_coplanar_json(self, capsys):
        assert run(["catenoid", "--r1", "1", "--r2", "2", "--h", "0"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["classification"] == "coplanar-annulus"
        assert doc["solutions"] == []

    def test_emit_meridian(self, tmp_path, capsys):
        out = tmp_path / "cat.json"
        assert run(["catenoid", "--r1", "1", "--r2", "1", "--h", "0.5",
                    "--emit-meridian", str(out), "--nodes", "100"]) == 0
        mer = rs.load_curve(out)
        assert mer.n_chords == 100
        assert tuple(mer.points[0]) == (1.0, 0.0)


class TestSpectrumCommand:
    def test_csv_output(self, tmp_path, capsys):
        curve = tmp_path / "cyl.json"
        rs.save_curve(rs.make_segment(rs.BoundaryCircles(1, 1, 1), 500), curve)
        out = tmp_path / "spec.csv"
        assert run(["spectrum", "--curve", str(curve), "--j", "4",
                    "--mesh", "1000", "--out", str(out)]) == 0
        lines = out.read_text().splitlines()
        assert lines[0].startswith("# subcommand=spectrum")
        assert lines[1] == "j,lambda,k,n,multiplicity"
        assert len(lines) == 6
        lam1 = float(lines[2].split(",")[1])
        assert lam1 == pytest.approx(np.pi ** 2, rel=1e-5)

    def test_resample_option(self, tmp_path, capsys):
        curve = tmp_path / "raw.json"
        curve.write_text('{"points": [[1, 0], [1.5, 0.2], [2, 1]]}')
        assert run(["spectrum", "--curve", str(curve), "--j", "2",
                    "--mesh", "500", "--out", "-"]) == 1
        assert run(["spectrum", "--curve", str(curve), "--j", "2",
                    "--mesh", "500", "--resample", "200", "--out", "-"]) == 0


class TestVerifyCommand:
    def test_lemma43_all_pass(self, tmp_path, capsys):
        out = tmp_path / "v.csv"
        code = run(["verify", "lemma43", "--trials", "25", "--seed", "9",
                    "--out", str(out)])
        assert code == 0
        lines = out.read_text().splitlines()
        assert lines[1] == "name,lhs,rhs,satisfied,seed,trial"
        assert len(lines) == 27
        assert all(line.split(",")[3] == "true" for line in lines[2:])

    def test_weyl(self, tmp_path, capsys):
        out = tmp_path / "w.csv"
        assert run(["verify", "weyl", "--trials", "4", "--seed", "2",
                    "--out", str(out)]) == 0

    def test_byte_identical_across_threads(self, tmp_path, capsys):
        a = tmp_path / "a.csv"
        b = tmp_path / "b.csv"
        run(["verify", "lemma43", "--trials", "10", "--seed", "5",
             "--out", str(a), "--threads", "1"])
        run(["verify", "lemma43", "--trials", "10", "--seed", "5",
             "--out", str(b), "--threads", "7"])
        assert a.read_bytes() == b.read_bytes()


class TestMaximizeCommand:
    def test_writes_artifacts(self, tmp_path, capsys):
        out = tmp_path / "run"
        code = run(["maximize", "--r1", "1", "--r2", "2", "--h", "0",
                    "--j", "1", "--control-points", "2", "--restarts", "1",
                    "--max-iters", "8", "--mesh-inner", "200",
                    "--mesh-final", "400", "--seed", "1", "--out", str(out)])
        assert code == 0
        mer = rs.load_curve(out / "meridian.json")
        assert mer.n_chords == 200
        spec_lines = (out / "spectrum.csv").read_text().splitlines()
        assert spec_lines[0].startswith("# subcommand=maximize")
        trace_lines = (out / "trace.csv").read_text().splitlines()
        assert trace_lines[1] == "iteration,best_lambda"
        vals = [float(l.split(",")[1]) for l in trace_lines[2:]]
        assert vals == sorted(vals)


class TestConvergeCommand:
    def test_csv_columns(self, tmp_path, capsys):
        out = tmp_path / "conv.csv"
        code = run(["converge", "--r1", "1", "--r2", "1", "--h", "0.5",
                    "--j-list", "1,2", "--control-points", "2",
                    "--restarts", "1", "--max-iters", "8",
                    "--mesh-inner", "200", "--mesh-final", "400",
                    "--seed", "1", "--out", str(out)])
        assert code == 0
        lines = out.read_text().splitlines()
        assert lines[1] == ("j,lambda_j,lambda_over_j,area,length,"
                            "hausdorff_to_catenoid")
        assert len(lines) == 4

    def test_coplanar_rejected(self, tmp_path, capsys):
        code = run(["converge", "--r1", "1", "--r2", "2", "--h", "0",
                    "--j-list", "1", "--out", str(tmp_path / "x.csv")])
        assert code == 1


def test_console_script_runs():
    proc = subprocess.run([sys.executable, "-m", "revspec.cli", "catenoid",
                           "--r1", "1", "--r2", "1", "--h", "2"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["classification"] == "discs-unique"
