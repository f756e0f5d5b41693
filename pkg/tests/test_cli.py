import json
import subprocess
import sys
from importlib import resources

import pytest

from dualgroup.cli import main


def run(*args):
    return subprocess.run([sys.executable, "-m", "dualgroup.cli", *args],
                          capture_output=True, text=True)


def test_order_and_centre_binary():
    r = run("order", "3")
    assert r.returncode == 0 and r.stdout.strip() == "96"
    r = run("centre", "4")
    assert r.returncode == 0 and r.stdout.strip() == "2"


def test_usage_errors_exit_2():
    r = run("frobnicate")
    assert r.returncode == 2 and "usage" in r.stderr
    r = run("order", "--bogus", "3")
    assert r.returncode == 2
    r = run("order", "1")
    assert r.returncode == 2 and "error" in r.stderr
    r = run("verify", "iota", "3")
    assert r.returncode == 2


def test_table_action_matches_resource(capsys):
    assert main(["table", "action", "--format", "csv"]) == 0
    golden = resources.files("dualgroup").joinpath("data", "table1.csv").read_text()
    assert capsys.readouterr().out == golden


def test_table_mult_json(capsys):
    assert main(["table", "mult", "--format", "json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["schema"] == 1 and data["products"]["A"]["K"] == "P"


def test_kernel_and_enumerate(capsys):
    assert main(["kernel", "4"]) == 0
    assert capsys.readouterr().out.strip() == "32"
    assert main(["kernel", "3", "--basis"]) == 0
    assert len(capsys.readouterr().out.split()) == 2
    assert main(["kernel", "3", "--list"]) == 0
    assert len(capsys.readouterr().out.splitlines()) == 4
    assert main(["enumerate", "3"]) == 0
    assert capsys.readouterr().out.strip() == "96"


def test_graphs(capsys):
    assert main(["graphs", "--figure", "tuv", "--format", "dot"]) == 0
    out = capsys.readouterr().out
    assert "graph T {" in out and "graph V {" in out


@pytest.mark.parametrize("argv", [
    ["verify", "relations", "4"],
    ["verify", "kernel-graph", "4"],
    ["verify", "splitting", "6"],
    ["verify", "splitting", "4"],
    ["verify", "iota", "3", "--seed", "1"],
    ["verify", "pairing", "3", "2", "--seed", "5", "--trials", "30"],
])
def test_verifications_pass(argv, capsys):
    assert main(argv) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["schema"] == 1


def test_coset_enum(capsys):
    assert main(["coset-enum"]) == 0
    assert capsys.readouterr().out.strip() == "3840"


def test_theta_is_deterministic(capsys):
    argv = ["theta", "--word", "1213", "--n", "3", "--seed", "9", "--dims", "2"]
    assert main(argv) == 0
    first = capsys.readouterr().out
    assert main(argv) == 0
    assert capsys.readouterr().out == first
    assert json.loads(first)["output"]["schema"] == 1


def test_verification_failure_exits_1(monkeypatch, capsys):
    import dualgroup.theta_action as ta
    good = ta.theta_generator
    monkeypatch.setattr(ta, "theta_generator",
                        lambda k, x: good(k, x) + ta.ParamVector.single(x.dims, "1,2,03"))
    assert main(["verify", "pairing", "3", "1", "--seed", "0", "--trials", "10"]) == 1
    data = json.loads(capsys.readouterr().out)
    assert data["ok"] is False and data["counterexample"] is not None
