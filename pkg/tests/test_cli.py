import io
import json
from pathlib import Path
import subprocess
import sys

import jsonschema
import pytest

from dycklab.cli import run

SCHEMA = json.loads((Path(__file__).resolve().parents[1] / "docs" / "schema.json").read_text())


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_catalan_brute_n3():
    code, out, _ = call("catalan", "--mode", "brute", "--n", "3")
    assert code == 0
    assert out.strip() == "q^3 + q^2*t + q*t^2 + t^3 + q*t"


def test_catalan_partition_n3():
    code, out, _ = call("catalan", "--mode", "partition", "--n", "3")
    assert code == 0 and out.strip() == "q^3 + q^2*t + q*t^2 + t^3"


@pytest.mark.parametrize("mode", ["brute", "two-column", "skeleton"])
def test_catalan_modes_json(mode):
    code, out, _ = call("catalan", "--mode", mode, "--n", "5", "--format", "json")
    payload = json.loads(out)
    jsonschema.validate(payload, SCHEMA)
    assert code == 0 and payload["mode"] == mode


def test_strings_tsv():
    code, out, _ = call("strings", "--n", "9", "--defc", "10", "--format", "tsv")
    assert code == 0
    rows = [line.split("\t") for line in out.splitlines()]
    assert len(rows[0]) == 32
    cells = [c for row in rows[1:] for c in row[1:] if c]
    assert len(cells) == 274
    assert rows[1][1] == "[0,0,0,0,0,0,1,1,0]"


def test_strings_annotate_marks_levels():
    code, out, _ = call("strings", "--n", "9", "--defc", "10", "--format", "tsv", "--annotate")
    assert code == 0
    assert out.count("^7") == 10 and out.count("^5") == 30


def test_strings_json_schema():
    code, out, _ = call("strings", "--n", "6", "--defc", "2", "--format", "json")
    jsonschema.validate(json.loads(out), SCHEMA)


def test_stats_json():
    code, out, _ = call("stats", "[0, 0, 1, 0, 0, 0, 0, 0, 1]", "--format", "json")
    payload = json.loads(out)
    jsonschema.validate(payload, SCHEMA)
    assert (payload["area"], payload["dinv"], payload["defc"]) == (2, 27, 7)
    assert payload["full_skeleton"] and not payload["special_skeleton"]


def test_tableau_insert_and_extract():
    code, out, _ = call("tableau", "insert", "[0,2,4]|[1,3]|[1,3,5]|[0,6]", "--format", "json")
    payload = json.loads(out)
    jsonschema.validate(payload, SCHEMA)
    assert payload["P"] == [[0, 3, 6], [0, 2, 5], [1, 4], [1, 3]]
    code, out, _ = call("tableau", "extract", "--p", "[0,3,6];[0,2,5];[1,4];[1,3]",
                        "--q", "[0,0,0];[1,1,2];[2,2];[3,3]")
    assert code == 0 and "[0,2,4]|[1,3]|[1,3,5]|[0,6]" in out


def test_symfun_commands():
    code, out, _ = call("symfun", "schur", "--shape", "[2,1]", "--vars", "2")
    assert code == 0 and out.strip() == "x0^2*x1 + x0*x1^2"
    code, out, _ = call("symfun", "ds", "--multiset", "[0]", "--d", "0", "--format", "json")
    jsonschema.validate(json.loads(out), SCHEMA)
    code, out, _ = call("symfun", "verify", "--multiset", "[0,1,1,2]", "--d", "1", "--mode", "affine",
                        "--format", "json")
    payload = json.loads(out)
    jsonschema.validate(payload, SCHEMA)
    assert code == 0 and payload["ok"]


def test_check_residual_text():
    code, out, _ = call("check", "residual")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[-1] == "status: PASS"
    assert "up skeleton\t42" in lines and "up East3\t152" in lines


def test_check_json_schema():
    code, out, _ = call("check", "residual", "--format", "json")
    payload = json.loads(out)
    jsonschema.validate(payload, SCHEMA)
    assert payload["status"] == "pass"


def test_check_failure_exit_code(monkeypatch):
    from dycklab import skeleton
    monkeypatch.setitem(skeleton.CASE4A, (3, 3, 4, 1, 2), (1, 2, 4, 3, 2))
    code, out, _ = call("check", "suites", "--fast")
    assert code == 1 and "east/west windows: FAIL" in out
    from dycklab.verify import residual
    monkeypatch.setattr(residual, "load_golden", lambda name: {"up skeleton": 41})
    code, out, _ = call("check", "residual")
    assert code == 1 and out.strip().endswith("status: FAIL")


def test_scan_flat_middle():
    code, out, _ = call("scan", "flat-middle", "--n", "7", "--format", "json")
    payload = json.loads(out)
    jsonschema.validate(payload, SCHEMA)
    assert code == 0 and payload["rows"][0]["values"][0] == 1


def test_parse_error_exit_2(capsys):
    code = run(["stats", "[0,1,x]"])
    err = capsys.readouterr().err
    assert code == 2
    assert "position 5" in err and "^" in err


def test_tableau_parse_error_position():
    code, _, err = call("tableau", "insert", "[0,2]|[1,q]")
    assert code == 2
    assert "position 9" in err


def test_usage_errors():
    assert call()[0] == 2
    assert call("catalan")[0] == 2
    assert call("catalan", "--n", "3", "--mode", "nope")[0] == 2
    assert call("strings", "--n", "3", "--defc", "0")[0] == 2


def test_output_is_stable():
    a = call("strings", "--n", "8", "--defc", "6", "--format", "json")[1]
    b = call("strings", "--n", "8", "--defc", "6", "--format", "json")[1]
    assert a == b


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "dycklab.cli", "catalan", "--n", "2"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "q + t"
