import io
import json
import subprocess
import sys

import pytest

from socialdrift import __version__
from socialdrift.cli import main
from socialdrift.io import read_graph


@pytest.fixture
def path_files(tmp_path):
    (tmp_path / "p.edges").write_text("# n=3\n0 1\n1 2\n")
    (tmp_path / "p.csv").write_text("node,state\n0,0\n1,1\n2,0\n")
    return tmp_path


def test_predict(path_files):
    out = io.StringIO()
    code = main(["predict", "--graph", str(path_files / "p.edges"),
                 "--states", str(path_files / "p.csv"), "--c", "0.1"], out=out)
    assert code == 0
    assert out.getvalue().splitlines() == [
        "node,degree,v", "0,1,-0.5", "1,2,1.0", "2,1,-0.5",
        "# drift_rate=0.1 corr=1.0",
    ]


def test_predict_mismatched_states(path_files):
    (path_files / "bad.csv").write_text("node,state\n0,1\n")
    assert main(["predict", "--graph", str(path_files / "p.edges"),
                 "--states", str(path_files / "bad.csv"), "--c", "0.1"]) == 1


def test_gen_graph(tmp_path):
    assert main(["gen-graph", "--n", "50", "--m", "100", "--seed", "3",
                 "--out", str(tmp_path / "g.edges")]) == 0
    g = read_graph(tmp_path / "g.edges")
    assert (g.n, g.m) == (50, 100)


def test_gen_graph_too_many(tmp_path):
    assert main(["gen-graph", "--n", "3", "--m", "4", "--out", str(tmp_path / "g")]) == 1


def test_simulate_deterministic(tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"n": 30, "m": 80, "c": 0.05, "iterations": 50,
                               "snapshot_every": 25, "noise": {"enabled": True}}))
    for tag in "ab":
        assert main(["simulate", "--config", str(cfg), "--out-traj", str(tmp_path / f"{tag}.csv"),
                     "--out-snapshots", str(tmp_path / f"snap_{tag}")]) == 0
    assert (tmp_path / "a.csv").read_bytes() == (tmp_path / "b.csv").read_bytes()
    for name in ("snap_50.edges", "snap_50.csv"):
        assert (tmp_path / "snap_a" / name).read_bytes() == (tmp_path / "snap_b" / name).read_bytes()


def test_simulate_invalid_config(tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text('{"n": 10, "m": 1000000}')
    assert main(["simulate", "--config", str(cfg), "--out-traj", str(tmp_path / "t.csv")]) == 1


def test_sweep_missing_config(tmp_path):
    assert main(["sweep", "--config", str(tmp_path / "nope.json"),
                 "--out", str(tmp_path / "s.csv")]) == 2


def test_unwritable_output(tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text('{"n": 10, "m": 10, "iterations": 1}')
    assert main(["simulate", "--config", str(cfg),
                 "--out-traj", str(tmp_path / "no" / "such" / "dir" / "t.csv")]) == 2


def test_bad_arguments():
    assert main(["simulate"]) == 1
    assert main(["frobnicate"]) == 1


def test_version_and_help(capsys):
    assert main(["--version"]) == 0
    assert __version__ in capsys.readouterr().out
    assert main(["--help"]) == 0
    assert "gen-graph" in capsys.readouterr().out


def test_module_entry_point(path_files):
    proc = subprocess.run(
        [sys.executable, "-m", "socialdrift", "predict", "--graph", str(path_files / "p.edges"),
         "--states", str(path_files / "p.csv"), "--c", "0.1"],
        capture_output=True, text=True, check=True,
    )
    assert "# drift_rate=0.1 " in proc.stdout
