import importlib
import json
import subprocess
import sys
from pathlib import Path

import pytest

from stirkit.cli import main
main_module = importlib.import_module("stirkit.cli.main")
from stirkit.cli.verify import CheckResult

GOLDEN = Path(__file__).parent / "golden" / "cycle_table.tsv"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_table_golden(capsys):
    code, out, _ = run(capsys, "table", "--kind", "cycle", "--nmin", "-4", "--nmax", "4", "--kmin", "-4", "--kmax", "4", "--format", "tsv")
    assert code == 0
    assert out == GOLDEN.read_text()


def test_table_json(capsys):
    code, out, _ = run(capsys, "table", "--kind", "subset", "--nmin", "3", "--nmax", "4", "--kmin", "2", "--kmax", "2", "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert data["kind"] == "subset"
    assert data["rows"] == [["3"], ["7"]]


def test_table_cap(capsys, monkeypatch):
    monkeypatch.setenv("STIRKIT_TABLE_CAP", "10")
    code, _, err = run(capsys, "table", "--kind", "cycle", "--nmin", "0", "--nmax", "9", "--kmin", "0", "--kmax", "9")
    assert code == 3 and "cap" in err


def test_eval(capsys):
    assert run(capsys, "eval", "subset(4,2)") == (0, "7\n", "")
    code, out, _ = run(capsys, "eval", "sum(k, [0<=k]*[k<=n], k*(k-1)*(n-k))", "--bind", "n=5")
    assert (code, out) == (0, "30\n")
    code, out, _ = run(capsys, "eval", "sum(k, [1 <= k <= n], 1/k)", "--bind", "n=3", "--format", "json")
    data = json.loads(out)
    assert data["value"] == "11/6" and data["exact"] is True


def test_eval_errors(capsys):
    code, _, err = run(capsys, "eval", "sum(k,")
    assert code == 2 and "1:7" in err
    assert run(capsys, "eval", "n + 1")[0] == 2
    assert run(capsys, "eval", "1/0")[0] == 2
    assert run(capsys, "eval", "10^10^10")[0] == 3
    assert run(capsys, "eval", "1", "--bind", "oops")[0] == 2


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as e:
        main(["table", "--kind", "cycle"])
    assert e.value.code == 2
    with pytest.raises(SystemExit) as e:
        main(["verify", "--suite", "all", "--seed", "-1"])
    assert e.value.code == 2
    capsys.readouterr()


def test_convert(capsys):
    assert run(capsys, "convert", "--poly", "0,0,0,1", "--from", "power", "--to", "falling") == (0, "0 1 3 1\n", "")
    code, out, _ = run(capsys, "convert", "--poly", "0 0 0 0 1", "--from", "rising", "--to", "power", "--format", "json")
    assert json.loads(out)["coefficients"] == ["0", "6", "11", "6", "1"]


def test_asym(capsys):
    code, out, _ = run(capsys, "asym", "--alpha", "1/2", "--z", "100", "--terms", "4", "--kind", "rising", "--compare-gamma", "--format", "json")
    data = json.loads(out)
    assert code == 0 and float(data["relative_error"]) < 1e-8
    assert run(capsys, "asym", "--alpha", "1/2", "--z", "100", "--terms", "-1", "--kind", "rising")[0] == 2


def test_series(capsys):
    code, out, _ = run(capsys, "series", "--id", "2.14", "--params", "z=2", "n=3", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["holds"] is True and data["reciprocal"] == "1/2"
    code, out, _ = run(capsys, "series", "--id", "2.27", "--params", "z=10", "alpha=1/2", "--format", "json")
    assert code == 0 and float(json.loads(out)["relative_error"]) <= 1e-6
    assert run(capsys, "series", "--id", "2.29", "--params", "order=5")[0] == 0
    assert run(capsys, "series", "--id", "2.21", "--params", "n=3")[0] == 0
    code, out, _ = run(capsys, "series", "--id", "2.21", "--params", "n=-1", "a=4", "r=1", "--format", "json")
    assert code == 0 and json.loads(out)["exact"] == "1/3"
    assert run(capsys, "series", "--id", "2.14", "--params", "z=2")[0] == 2
    assert run(capsys, "series", "--id", "2.14", "--params", "z=2", "n=3", "bogus=1")[0] == 2
    assert run(capsys, "series", "--id", "2.27", "--params", "z=2", "alpha=1/2", "terms=100000")[0] == 3


def test_oracle(capsys):
    assert run(capsys, "oracle", "--what", "perms", "--params", "n=4", "k=2") == (0, "11\n", "")
    assert run(capsys, "oracle", "--what", "partitions", "--params", "n=4", "k=2")[1] == "7\n"
    assert run(capsys, "oracle", "--what", "esym", "--params", "n=4", "k=2")[1] == "35\n"
    assert run(capsys, "oracle", "--what", "hsym", "--params", "n=3", "k=2")[1] == "25\n"
    assert run(capsys, "oracle", "--what", "omega", "--params", "poset=chain:2", "n=3")[1] == "6\n"
    assert run(capsys, "oracle", "--what", "omega", "--params", "poset=antichain:2", "n=3", "strict=true")[1] == "9\n"
    assert run(capsys, "oracle", "--what", "omega", "--params", "poset=chain:2", "n=3", "strict=true")[1] == "3\n"
    assert run(capsys, "oracle", "--what", "omega", "--params", "poset=cube:2", "n=3")[0] == 2
    assert run(capsys, "oracle", "--what", "perms", "--params", "n=99", "k=2")[0] == 3


def test_oracle_poset_file(capsys, tmp_path):
    f = tmp_path / "p.txt"
    f.write_text("3\n0 < 1\n0 < 2\n")
    code, out, _ = run(capsys, "oracle", "--what", "omega", "--params", f"poset=file:{f}", "n=2")
    assert code == 0 and int(out) > 0


def test_verify_failure_exit_code(capsys, monkeypatch):
    monkeypatch.setattr(main_module, "run_suite", lambda *a: [CheckResult("x", "broken", False, "forced")])
    code, out, _ = run(capsys, "verify", "--suite", "iverson")
    assert code == 1 and out.startswith("FAIL")


def test_verify_all_deterministic():
    cmd = [sys.executable, "-m", "stirkit", "verify", "--suite", "all", "--seed", "42"]
    first = subprocess.run(cmd, capture_output=True, text=True, timeout=300)
    second = subprocess.run(cmd, capture_output=True, text=True, timeout=300)
    assert first.returncode == 0, first.stdout + first.stderr
    assert first.stdout == second.stdout
