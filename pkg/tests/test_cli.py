"""CLI and scenario-file behavior."""

import json
import subprocess
import sys
from importlib import resources

import pytest

from dpglue import scenarios
from dpglue.cli import main


def data_path(name):
    return str(resources.files("dpglue").joinpath("data", name))


TAME = data_path("tame_families.json")
WILD = data_path("wild_families.json")
PARAMS = data_path("parametrizations.json")


def run_cli(args):
    proc = subprocess.run(
        [sys.executable, "-m", "dpglue.cli", *args],
        capture_output=True, text=True,
    )
    return proc.returncode, proc.stdout, proc.stderr


# -- schema ------------------------------------------------------------


def test_corpus_files_validate():
    for path in (TAME, WILD):
        loaded = scenarios.load_scenario_file(path)
        assert loaded


def test_unknown_field_rejected(tmp_path):
    doc = {"version": "1", "scenarios": [
        {"name": "x", "characteristic": 0, "blocks": [{"case": "a1"}],
         "glueCase": "A", "mystery": 1}]}
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(doc))
    with pytest.raises(scenarios.ScenarioFileError):
        scenarios.load_scenario_file(str(p))


def test_zero_b_rejected(tmp_path):
    doc = {"version": "1", "scenarios": [
        {"name": "x", "characteristic": 0, "blocks": [{"case": "c2", "a": 2}],
         "glueCase": "D", "derivation": {"a": "1", "b": ["0"]}}]}
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(doc))
    with pytest.raises(scenarios.ScenarioFileError):
        scenarios.load_scenario_file(str(p))


def test_json_parse_error_has_position(tmp_path):
    p = tmp_path / "broken.json"
    p.write_text('{"version": "1",')
    with pytest.raises(scenarios.ScenarioFileError) as err:
        scenarios.load_scenario_file(str(p))
    assert "line" in str(err.value) and "column" in str(err.value)


# -- run ---------------------------------------------------------------


def test_run_corpus_exit_zero():
    assert main(["run", TAME, WILD]) == 0


def test_run_wild_corpus_values(capsys):
    main(["run", WILD, "--format", "json"])
    doc = json.loads(capsys.readouterr().out)
    by_name = {s["name"]: s for s in doc["scenarios"]}
    assert by_name["wild-p3-N1"]["chi"] == -1
    assert by_name["wild-p3-N1"]["h1"] == 2
    assert by_name["wild-p2-orders22"]["chi"] == -1
    assert by_name["wild-p5-N2"]["h1"] == 8
    assert doc["failed"] == 0


def test_run_tame_corpus_all_chi_one(capsys):
    main(["run", TAME, "--format", "json"])
    doc = json.loads(capsys.readouterr().out)
    for s in doc["scenarios"]:
        assert s["chi"] == 1 and s["h1"] == 0 and s["tame"]


def test_expectation_mismatch_exits_one(tmp_path):
    doc = {"version": "1", "scenarios": [
        {"name": "x", "characteristic": 0, "blocks": [{"case": "a1"}],
         "glueCase": "A", "expect": {"chi": 2}}]}
    p = tmp_path / "s.json"
    p.write_text(json.dumps(doc))
    assert main(["run", str(p)]) == 1


def test_malformed_file_exits_two(tmp_path):
    p = tmp_path / "s.json"
    p.write_text("not json")
    code, _, err = run_cli(["run", str(p)])
    assert code == 2 and "error" in err


def test_deterministic_output():
    code1, out1, _ = run_cli(["run", TAME, WILD])
    code2, out2, _ = run_cli(["run", TAME, WILD, "--jobs", "4"])
    assert code1 == code2 == 0
    assert out1 == out2


# -- catalog -----------------------------------------------------------


def test_catalog_blocks(capsys):
    assert main(["catalog", "--a-max", "5"]) == 0
    out = capsys.readouterr().out
    assert out.count("\n") >= 10
    assert "LATTICE FAIL" not in out


def test_catalog_json_round_trips(capsys):
    assert main(["catalog", "--format", "json"]) == 0
    rows = json.loads(capsys.readouterr().out)
    assert {r["case"] for r in rows} >= {"a1", "b", "c1", "d1", "e"}


def test_catalog_degree12(capsys):
    assert main(["catalog", "--degree12"]) == 0
    out = capsys.readouterr().out
    assert out.count("deg 1") == 3
    assert "IDENTITY FAILS" not in out


# -- verify-param ------------------------------------------------------


def test_verify_param_corpus():
    assert main(["verify-param", PARAMS]) == 0


def test_verify_param_failure(tmp_path, capsys):
    doc = {"version": "1", "checks": [
        {"name": "broken", "characteristic": 0, "hypersurface": "y - 1",
         "variables": ["y"], "substitution": {"y": "u"},
         "targetVariables": ["u"]}]}
    p = tmp_path / "p.json"
    p.write_text(json.dumps(doc))
    assert main(["verify-param", str(p)]) == 1
    assert "FAIL" in capsys.readouterr().out


def test_verify_param_schema_error(tmp_path):
    p = tmp_path / "p.json"
    p.write_text(json.dumps({"version": "1", "checks": []}))
    assert main(["verify-param", str(p)]) == 2
