import io
import json
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest

from cdala.cli import main

ROOT = Path(__file__).parent.parent
GOLDEN = Path(__file__).parent / "golden"
SCHEMA = json.loads((ROOT / "docs" / "report.schema.json").read_text())
CASES = json.loads((GOLDEN / "cases.json").read_text())


def run(argv):
    buf = io.StringIO()
    code = main(argv, out=buf)
    return code, buf.getvalue()


@pytest.mark.parametrize("case", CASES, ids=[c["file"] for c in CASES])
def test_json_matches_schema(case):
    argv = [a.replace("{golden}", str(GOLDEN)) for a in case["argv"]]
    code, text = run(argv)
    assert code == case["exit"]
    report = json.loads(text)
    jsonschema.validate(report, SCHEMA)
    if code == 0:
        assert all(c["status"] != "fail" for c in report["checks"])


def test_verify_dala_text():
    code, text = run(["verify", "--which", "dala", "--n", "2", "--d", "2"])
    assert code == 0
    assert "[PASS] Serre" in text and "[FAIL]" not in text


def test_coinv_dim():
    code, text = run(["weyl", "coinv", "--l", "2", "--d", "1", "--json"])
    out = json.loads(text)["outputs"]
    assert code == 0 and out["dim"] == 3


def test_weyl_dim():
    code, text = run(["weyl", "dim", "--n", "3", "--l", "2", "--k", "2"])
    assert code == 0 and "dim: 15" in text


def test_bracket_text():
    code, text = run(["bracket", "E[1,2]*u", "E[2,1]*v", "--d", "2"])
    assert code == 0 and "E[1,1]*u*v - E[2,2]*u*v" in text


def test_qfin_certificates():
    code, text = run(["qfin", "--input", str(GOLDEN / "weights.json"), "--order", "4", "--json"])
    report = json.loads(text)
    assert code == 0
    assert report["checks"] and all(c["status"] == "pass" for c in report["checks"])


def test_error_json():
    code, text = run(["bracket", "E[1,2]*(u", "v", "--n", "2", "--json"])
    err = json.loads(text)["error"]
    assert code == 3 and err["type"] == "ExprSyntaxError" and err["exit_code"] == 3
    assert err["pos"] == 9
    jsonschema.validate(json.loads(text), SCHEMA)


def test_usage_errors():
    assert run(["verify", "--which", "nope"])[0] == 2
    assert run([])[0] == 2
    assert run(["qfin", "--input", "/nonexistent.json"])[0] == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "cdala", "weyl", "dim", "--n", "2", "--l", "1", "--k", "1"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "dim: 2" in proc.stdout
