import json
import subprocess
import sys
from fractions import Fraction

import pytest

from deltalp import ball as B
from deltalp.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_eval_bessel_clifford_round_trips(capsys):
    code, out, _ = run(capsys, "eval", "bessel-clifford", "--nu", "1.5", "--t", "-5.047")
    assert code == 0
    line = out.strip().splitlines()[-1]
    assert "±" in line
    value = B.parse_ball_text(line)
    assert value.contains(Fraction("0.000033131143517139868522283283376381427221424043568029"))


def test_eval_partition_csv(capsys):
    code, out, _ = run(capsys, "eval", "partition", "--n-max", "5", "--format", "csv")
    assert code == 0
    assert out.splitlines() == ["n,p", "0,1", "1,1", "2,2", "3,3", "4,5", "5,7"]


def test_eval_frac_partition_json(capsys):
    code, out, _ = run(capsys, "eval", "frac-partition", "--alpha", "2", "--n-max", "3", "--format", "json")
    rows = json.loads(out)["rows"]
    assert [r["p_alpha"] for r in rows] == ["1", "2", "5", "10"]


def test_eval_gamma_pole_is_usage_error(capsys):
    code, _, err = run(capsys, "eval", "gamma", "--z", "-2")
    assert code == 2 and "pole" in err


def test_symbolic_constants(capsys):
    code, out, _ = run(capsys, "eval", "gamma", "--z", "pi2/6", "--precision", "64")
    assert code == 0


def test_global_flags_before_or_after(capsys):
    _, a, _ = run(capsys, "--precision", "64", "eval", "r-alpha", "--alpha", "1", "--n", "5")
    _, b, _ = run(capsys, "eval", "r-alpha", "--alpha", "1", "--n", "5", "--precision", "64")
    _, c, _ = run(capsys, "eval", "r-alpha", "--alpha", "1", "--n", "5")
    assert a == b != c


def test_precision_bounds(capsys):
    assert run(capsys, "--precision", "32", "eval", "gamma", "--z", "2")[0] == 2
    assert run(capsys, "eval", "gamma", "--z", "2", "--precision", "256", "--max-precision", "128")[0] == 2


def test_usage_errors(capsys):
    assert run(capsys)[0] == 2
    assert run(capsys, "bogus")[0] == 2
    assert run(capsys, "jensen", "--source", "r-alpha")[0] == 2


def test_jensen_partition_boundary(capsys):
    code, out, _ = run(capsys, "jensen", "--n", "25", "--d", "2", "--root-sign", "AllNegative", "--format", "json")
    assert code == 0 and json.loads(out)["verdict"] == "Hyperbolic"
    code, out, _ = run(capsys, "jensen", "--n", "24", "--d", "2", "--format", "json")
    assert code == 1 and json.loads(out)["verdict"] == "NotHyperbolic"


def test_certify_and_delta_appell(capsys):
    code, out, _ = run(capsys, "certify", "--coeffs=-2,0,1", "--min-sep", "2", "--format", "json")
    data = json.loads(out)
    assert code == 0 and len(data["rows"]) == 2
    code, out, _ = run(capsys, "delta-appell", "--f", "bessel-clifford:3/2", "--t0", "0",
                       "--delta", "pi2/6", "--d", "3", "--format", "json")
    assert code == 0 and json.loads(out)["verdict"] == "Hyperbolic"


def test_trace_writes_csv(tmp_path, capsys):
    target = tmp_path / "curves.csv"
    code, _, err = run(capsys, "trace", "--roots=0,-2", "--delta", "1", "--appell-d", "2",
                       "--points", "4", "--out", str(target), "--check")
    assert code == 0
    lines = target.read_text().splitlines()
    assert lines[0] == "x,branch_k,t,d"
    assert {row.split(",")[3] for row in lines[1:]} == {"1", "2"}
    assert "0 violations" in err


def test_verify_is_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    args = ["verify", "delta-difference", "--trials", "10", "--max-deg", "5", "--delta", "0.3", "--seed", "42"]
    assert run(capsys, *args, "--out", str(a))[0] == 0
    assert run(capsys, *args, "--out", str(b))[0] == 0
    assert a.read_bytes() == b.read_bytes()
    assert json.loads(a.read_text())["config"]["seed"] == 42


@pytest.mark.parametrize("argv", [
    ["verify", "gaussian", "--beta", "1/2", "--d-max", "4"],
    ["verify", "laguerre", "--nu", "0", "--d-max", "4"],
    ["verify", "lp-embed", "--f", "reciprocal-gamma", "--t0", "2", "--d-max", "5"],
    ["verify", "zeros", "--nu", "1/2", "--k", "3"],
    ["verify", "ono", "--alpha", "1", "--n-max", "2", "--d-max", "3"],
])
def test_verify_suites(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    assert json.loads(out)["summary"]["failed"] == 0


def test_verify_plain_format(capsys):
    code, out, _ = run(capsys, "verify", "gaussian", "--beta", "1", "--d-max", "2", "--format", "plain")
    assert code == 0 and out.startswith("suite_id: gaussian")


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "deltalp", "eval", "partition", "--n-max", "2"],
                         capture_output=True, text=True)
    assert out.returncode == 0 and out.stdout.splitlines()[-1] == "2  2"
