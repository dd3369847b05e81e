import json
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest

from contrapunctus.cli import ConfigError, RunConfig, main

SCHEMA = json.loads((Path(__file__).parent.parent / "schemas" / "reports.schema.json").read_text())


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def validate(payload, kind):
    jsonschema.validate(payload, {**SCHEMA, "$ref": f"#/$defs/{kind}"})


@pytest.fixture(scope="module")
def table_runs():
    """Two identical table1 json runs plus a strict run, shared across tests."""
    outs = []
    for argv in (["table1", "--format", "json"], ["table1", "--format", "json"], ["table1", "--strict"],
                 ["table1", "--strict", "--allow-disputed"]):
        proc = subprocess.run(
            [sys.executable, "-m", "contrapunctus.cli", *argv], capture_output=True, text=True, check=False
        )
        outs.append(proc)
    return outs


def test_analyze(capsys):
    code, out, _ = run(capsys, "analyze", "-n", "16", "-S", "0,1,3,4,5,6,7,10", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    validate(payload, "analyze")
    assert payload["strong"] and payload["polarity"] == "e^8.1"
    code, out, _ = run(capsys, "analyze", "-n", "6", "-S", "0,1,2")
    assert code == 0 and "strong         no" in out and "e^3.1, e^5.5" in out
    assert run(capsys, "analyze", "-n", "6", "-S", "0,1")[0] == 1


def test_symmetries(capsys):
    code, out, _ = run(capsys, "symmetries", "-n", "6", "-S", "0,2,3", "-k", "2", "--successors", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    validate(payload, "symmetries")
    assert payload["symmetries"] == ["e^(e.3).(1+e.3)"] and payload["cardinality"] == 15
    assert len(payload["successors"]) == 15
    code, out, _ = run(capsys, "symmetries", "-n", "16", "-S", "U0", "-k", "6")
    assert code == 0 and "e^(e.3).13" in out and "112" in out
    assert run(capsys, "symmetries", "-n", "16", "-S", "U0", "-k", "2")[0] == 1
    assert run(capsys, "symmetries", "-S", "U0")[0] == 1
    assert run(capsys, "symmetries", "-n", "12", "-S", "U0", "-k", "0")[0] == 1


def test_symmetries_csv(capsys):
    code, out, _ = run(capsys, "symmetries", "-S", "U0", "-k", "0", "--format", "csv")
    assert code == 0
    assert out.splitlines() == [
        "interval,symmetry,cardinality",
        "0,e^(e.5).3,96",
        "0,e^(e.6).13,96",
        "0,e^(e.11).15,96",
    ]


def test_continuum(capsys):
    code, out, _ = run(capsys, "continuum", "-k", "1/8", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    validate(payload, "continuum")
    assert payload["maximizers"] == ["e^(5/8).(-1)"]
    assert payload["measure"] == "3/8" and payload["successors_text"] == "(1/8, 1/2)"
    code, out, _ = run(capsys, "continuum", "-k", "1/4")
    assert code == 0 and out.count("e^(3/4)") >= 2
    assert run(capsys, "continuum", "--semitones", "4.5")[0] == 0
    assert run(capsys, "continuum", "-k", "1/2")[0] == 1
    assert run(capsys, "continuum", "-k", "abc")[0] == 1
    assert run(capsys, "continuum")[0] == 1


def test_continuum_claims_exit_code(capsys):
    # the unison claim fails honestly, so this is a verification mismatch
    code, out, _ = run(capsys, "continuum", "--verify-claims", "--grid", "40", "--format", "json")
    assert code == 2
    payload = json.loads(out)
    validate(payload, "claims")
    assert payload["h1"]["passed"]
    assert [c["name"] for c in payload["claims"] if not c["passed"]] == ["minor_third_unique_universal"]


def test_oracle(capsys):
    code, out, _ = run(capsys, "oracle", "-n", "6", "-S", "0,2,3", "--all-k", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    validate(payload, "oracle")
    assert payload["match"]
    assert run(capsys, "oracle", "-n", "12", "-S", "0,1,4,5,6,9", "--all-k")[0] == 0
    assert run(capsys, "oracle", "-n", "512", "-S", ",".join(map(str, range(256))), "--all-k")[0] == 1
    assert run(capsys, "oracle", "-S", "X6")[0] == 1


def test_usage_errors_exit_one(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["nonsense"])
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        main(["table1", "--mode", "sideways"])
    assert exc.value.code == 1


def test_table1_json_and_determinism(table_runs):
    first, second = table_runs[0], table_runs[1]
    assert first.returncode == 0 and first.stdout == second.stdout
    payload = json.loads(first.stdout)
    validate(payload, "table1")
    assert len(payload["rows"]) == 8
    assert {d["interval"] for d in payload["discrepancies"]} == {5, 7, 10}
    assert all(d["disputed"] for d in payload["discrepancies"])


def test_table1_strict(table_runs):
    strict, allowed = table_runs[2], table_runs[3]
    assert strict.returncode == 2
    assert "e^(e.244).511" in strict.stdout and "e^(e.224).511" in strict.stdout
    assert allowed.returncode == 0


def test_table1_compare(capsys):
    code, out, _ = run(capsys, "table1", "--mode", "compare", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    validate(payload, "table1")
    assert payload["mode_comparison"] == []


def test_run_config(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"command": "symmetries", "dichotomy": "X6", "intervals": [2], "output_format": "json"}))
    code, out, _ = run(capsys, "run", str(cfg))
    assert code == 0 and json.loads(out)["cardinality"] == 15
    cfg.write_text(json.dumps({"command": "symmetries", "dichotomy": "X6", "intervals": [2], "colour": "red"}))
    code, _, err = run(capsys, "run", str(cfg))
    assert code == 1 and "colour" in err
    cfg.write_text("{not json")
    assert run(capsys, "run", str(cfg))[0] == 1


def test_run_config_validation():
    with pytest.raises(ConfigError):
        RunConfig.from_mapping({"dichotomy": "X6"})
    with pytest.raises(ConfigError):
        RunConfig(command="table1", mode="sideways").validate()
    with pytest.raises(ConfigError):
        RunConfig(command="table1", output_format="xml").validate()
    with pytest.raises(ConfigError):
        RunConfig(command="symmetries", dichotomy="X6", intervals=[0, 2]).validate()


def test_console_script():
    proc = subprocess.run(["contrapunctus", "analyze", "-S", "X12"], capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and "strong" in proc.stdout
