"""Tests for the suite runner, report determinism and the command line."""

import csv
import json
import math

import pytest

from liecontact.cli import main
from liecontact.report import SUITE_NAMES, SuiteConfig, run
from liecontact.so_contact import Signature


def test_config_validation():
    with pytest.raises(ValueError, match="unknown suite"):
        SuiteConfig(2, 1, suites=("algebra", "nonsense"))
    with pytest.raises(ValueError, match="at least one suite"):
        SuiteConfig(2, 1, suites=())
    with pytest.raises(ValueError, match="trials"):
        SuiteConfig(2, 1, trials=0)
    with pytest.raises(ValueError, match="signature"):
        SuiteConfig(0, 0)


def test_full_run_passes_and_has_the_report_shape():
    report = run(SuiteConfig(2, 1, trials=5))
    assert report["schema"] == 1
    assert (report["p"], report["q"]) == (2, 1)
    assert report["status"] == "pass"
    assert report["suites"] == list(SUITE_NAMES)
    for record in report["records"]:
        assert sorted(record) == ["claim", "name", "status", "trials",
                                  "wall_time", "witness"]
        assert record["status"] == "pass"
        assert record["witness"] is None
        assert record["wall_time"] is None


def test_runs_are_deterministic():
    a = run(SuiteConfig(2, 2, trials=4, seed=11))
    b = run(SuiteConfig(2, 2, trials=4, seed=11))
    assert json.dumps(a) == json.dumps(b)


def test_suite_subsets_do_not_shift_each_other():
    full = run(SuiteConfig(2, 1, trials=4))
    only = run(SuiteConfig(2, 1, trials=4, suites=("algebra",)))
    k = len(only["records"])
    assert k > 0
    assert full["records"][:k] == only["records"]
    tail = run(SuiteConfig(2, 1, trials=4, suites=("reconstruction",)))
    assert full["records"][-len(tail["records"]):] == tail["records"]


def test_timings_fill_wall_time():
    report = run(SuiteConfig(3, 0, trials=2, suites=("algebra",),
                             timings=True))
    for record in report["records"]:
        assert isinstance(record["wall_time"], float)
        assert record["wall_time"] >= 0.0


# ---------------------------------------------------------------------------
# command line


def test_cli_report_is_byte_identical(tmp_path):
    out1 = tmp_path / "r1.json"
    out2 = tmp_path / "r2.json"
    argv = ["--p", "2", "--q", "1", "--trials", "3", "--suite", "algebra",
            "--suite", "quaternion"]
    assert main(argv + ["--out", str(out1)]) == 0
    assert main(argv + ["--out", str(out2)]) == 0
    b1 = out1.read_bytes()
    assert b1 == out2.read_bytes()
    report = json.loads(b1)
    assert report["status"] == "pass"
    names = [r["name"] for r in report["records"]]
    assert "jacobi-basis-triples" in names
    assert "split-relations" in names


def test_cli_stdout_report(capsys):
    assert main(["--p", "3", "--q", "0", "--trials", "2",
                 "--suite", "chains"]) == 0
    out = capsys.readouterr().out
    report = json.loads(out)
    assert report["status"] == "pass"
    assert report["suites"] == ["chains"]


def test_cli_chain_export(tmp_path):
    path1 = tmp_path / "c1.csv"
    path2 = tmp_path / "c2.csv"
    argv = ["--p", "2", "--q", "2", "--export-chain", None, "--chain-g",
            "random", "--seed", "5", "--t-min=-3/2", "--t-max", "3/2",
            "--steps", "7"]
    argv1 = [a if a is not None else str(path1) for a in argv]
    argv2 = [a if a is not None else str(path2) for a in argv]
    assert main(argv1) == 0
    assert main(argv2) == 0
    assert path1.read_bytes() == path2.read_bytes()
    with open(path1, newline="") as fh:
        rows = list(csv.reader(fh))
    n = 4
    assert rows[0] == ["t"] + ["c%d%d" % (i + 1, j + 1)
                               for i in range(n + 4) for j in range(2)]
    assert len(rows) == 1 + 7
    ts = [float(r[0]) for r in rows[1:]]
    assert ts == [-1.5, -1.0, -0.5, 0.0, 0.5, 1.0, 1.5]
    sig = Signature(2, 2)
    sform = [[float(sig.form_s()[i, j]) for j in range(n + 4)]
             for i in range(n + 4)]
    for r in rows[1:]:
        cols = [[float(r[1 + 2 * i + j]) for i in range(n + 4)]
                for j in range(2)]
        for a in range(2):
            norm = math.fsum(c * c for c in cols[a])
            assert abs(norm - 1.0) < 1e-12
            for b in range(2):
                pair = math.fsum(
                    cols[a][i] * sform[i][k] * cols[b][k]
                    for i in range(n + 4) for k in range(n + 4))
                assert abs(pair) < 1e-10


def test_cli_usage_errors():
    with pytest.raises(SystemExit) as err:
        main(["--p", "2", "--q", "1"])
    assert err.value.code == 2
    with pytest.raises(SystemExit) as err:
        main(["--p", "0", "--q", "0", "--suite", "algebra"])
    assert err.value.code == 2
    with pytest.raises(SystemExit) as err:
        main(["--p", "2", "--q", "1", "--suite", "bogus"])
    assert err.value.code == 2
    with pytest.raises(SystemExit) as err:
        main(["--p", "2", "--q", "1", "--export-chain", "x.csv",
              "--steps", "1"])
    assert err.value.code == 2


def test_cli_timings_break_nothing(tmp_path):
    out = tmp_path / "t.json"
    assert main(["--p", "2", "--q", "1", "--trials", "2", "--suite",
                 "normality", "--timings", "--out", str(out)]) == 0
    report = json.loads(out.read_text())
    assert all(isinstance(r["wall_time"], float) for r in report["records"])
