import json

import pytest

from orush.cli import RunConfig, UsageError, run

# every subcommand with arguments that make it run to completion
INVOCATIONS = {
    "content": ["--d", "-3", "--f", "(1+w)+2x"],
    "lf": ["--d", "-5", "--f", "2+2x", "--ideal", "2,1+w"],
    "dedekind-or": ["--d", "-5", "--f", "6"],
    "factor-ideal": ["--d", "-5", "--gens", "6"],
    "gaussian": ["--d", "-3", "--f", "(1+w)+2x", "--g", "(1-w)+2x"],
    "dm-exponent": ["--d", "-3", "--f", "(1+w)+2x", "--g", "(1-w)+2x"],
    "weak-content": ["--vars", "x,y", "--rel", "x*y", "--f", "x", "--g", "y"],
    "power-content": ["--rel", "x^2", "--samples", "50"],
    "prime-extension": ["--vars", "x,y", "--rel", "xy", "--p", "2"],
    "prop46": ["--vars", "x,y", "--rel", "xy", "--f", "x", "--g", "y"],
    "dvr-base": ["--p", "3", "--f", "9x+3"],
    "transitivity": ["--top-rel", "x*y", "--samples", "30"],
    "dim2": ["--prec", "8"],
    "node": ["--prec", "6", "--degree-bound", "3"],
    "dvr-chain": ["--coeffs", "0,0,0,1,0,1", "--prec", "8"],
    "xp": ["--bound", "10"],
    "eisenstein": ["--expr", "x^2-y^2*(1+y)", "--prime", "y+1"],
}

EXPECTED_CODES = {
    "gaussian": 1,
    "dm-exponent": 0,
    "weak-content": 1,
    "power-content": 1,
    "prime-extension": 1,
    "prop46": 1,
}


def run_json(*argv):
    code, text = run([*argv, "--json"])
    return code, json.loads(text)


def test_gaussian_example():
    code, rep = run_json("gaussian", "--d", "-3", "--f", "(1+w)+2x", "--g", "(1-w)+2x")
    assert code == 1 and rep["verdict"] == "fails"
    assert rep["witness"]["c(fg)"]["hnf"] == [4, 0, 4]
    assert rep["witness"]["c(f)c(g)"]["hnf"] == [4, 2, 2]
    code, text = run(["gaussian", "--d", "-3", "--f", "(1+w)+2x", "--g", "(1-w)+2x"])
    assert "HNF(4, 0, 4)" in text and "HNF(4, 2, 2)" in text


def test_xp_example():
    code, rep = run_json("xp", "--bound", "10")
    assert code == 0 and rep["verdict"] == "fails-as-expected"
    assert rep["details"]["intersection"] == 210


def test_factor_ideal_example():
    code, text = run(["factor-ideal", "--d", "-5", "--gens", "6"])
    assert code == 0
    assert "HNF(2, 1, 1)^2 * HNF(3, 1, 1) * HNF(3, 2, 1)" in text


@pytest.mark.parametrize("command", sorted(INVOCATIONS))
def test_every_subcommand_runs_and_is_deterministic(command):
    argv = [command, *INVOCATIONS[command], "--json"]
    code, first = run(argv)
    assert code == EXPECTED_CODES.get(command, 0), first
    code2, second = run(argv)
    assert (code, first) == (code2, second)
    rep = json.loads(first)
    assert rep["command"] == command
    assert set(rep["config"]) == {"seed", "samples", "coeff_bound", "degree_bound", "prec", "factor_budget", "format"}


def test_text_output_embeds_config():
    code, text = run(["xp", "--bound", "5"])
    assert code == 0 and text.splitlines()[1].startswith("config: ")


def test_demos_exit_zero_when_failure_reproduces():
    for argv in (["dim2", "--char", "2", "--prec", "6"], ["node", "--prec", "4"], ["xp"]):
        code, rep = run_json(*argv)
        assert code == 0 and rep["verdict"] == "fails-as-expected"


def test_seed_from_environment(monkeypatch):
    monkeypatch.setenv("ORUSH_SEED", "7")
    _, rep = run_json("power-content", "--samples", "20")
    assert rep["config"]["seed"] == 7 and rep["seed"] == 7
    _, rep = run_json("power-content", "--samples", "20", "--seed", "3")
    assert rep["config"]["seed"] == 3
    monkeypatch.setenv("ORUSH_SEED", "seven")
    code, _ = run(["power-content"])
    assert code == 2


def test_seed_changes_only_sampled_details(monkeypatch):
    monkeypatch.delenv("ORUSH_SEED", raising=False)
    _, a = run_json("power-content", "--rel", "x^2", "--samples", "40", "--seed", "1")
    _, b = run_json("power-content", "--rel", "x^2", "--samples", "40", "--seed", "2")
    assert a["verdict"] == b["verdict"] == "fails" and a["witness"] == b["witness"]


def test_usage_errors():
    assert run(["gaussian", "--bogus"])[0] == 2
    assert run([])[0] == 2
    assert run(["nonsense"])[0] == 2
    code, text = run(["gaussian", "--d", "-3", "--f", "x"])
    assert code == 2 and "--g" in text
    code, text = run(["gaussian", "--f", "x+", "--g", "x"])
    assert code == 2
    assert run(["power-content", "--samples", "0"])[0] == 2
    assert run(["dm-exponent", "--f", "x", "--g", "x", "--cap", "0"])[0] == 2


def test_malformed_series_file_names_the_field(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"var": "y", "prec": 4, "coeffs": [1, "x"]}))
    code, text = run(["dvr-chain", "--series", str(bad)])
    assert code == 2 and "coeffs" in text
    bad.write_text(json.dumps({"var": "y", "coeffs": [1]}))
    code, text = run(["dvr-chain", "--series", str(bad)])
    assert code == 2 and "prec" in text
    bad.write_text("{not json")
    code, text = run(["dvr-chain", "--series", str(bad)])
    assert code == 2 and "not valid JSON" in text
    code, text = run(["dvr-chain", "--series", str(tmp_path / "missing.json")])
    assert code == 2 and "cannot read" in text


def test_series_file_round_trip(tmp_path):
    good = tmp_path / "g.json"
    good.write_text(json.dumps({"var": "y", "prec": 8, "coeffs": [0, 0, 0, 1, 0, 1]}))
    code, rep = run_json("dvr-chain", "--series", str(good))
    assert code == 0 and rep["chain"]["exponents"] == [1, 2, 3, 3, 3, 3, 3, 3]


def test_malformed_polynomial_file_names_the_field(tmp_path):
    bad = tmp_path / "p.json"
    bad.write_text(json.dumps({"ring": "ZZ", "vars": ["x"], "terms": [[1, "q"]]}))
    code, text = run(["eisenstein", "--poly", str(bad), "--prime", "2"])
    assert code == 2 and "terms" in text
    bad.write_text(json.dumps({"ring": "ZZ"}))
    code, text = run(["eisenstein", "--poly", str(bad), "--prime", "2"])
    assert code == 2 and "terms" in text
    good = tmp_path / "q.json"
    good.write_text(json.dumps({"ring": "ZZ", "vars": ["x"], "terms": [[2, 1], [0, -2]]}))
    assert run(["eisenstein", "--poly", str(good), "--prime", "2"])[0] == 0


def test_error_report_is_json_when_requested():
    code, text = run(["dvr-chain", "--coeffs", "0,0", "--json"])
    assert code == 2
    rep = json.loads(text)
    assert rep["error"] == "InconclusiveError" and rep["config"]["prec"] == 16


def test_run_config_validation():
    with pytest.raises(UsageError):
        RunConfig(seed=0, samples=-1)
    with pytest.raises(UsageError):
        RunConfig(seed=0, format="xml")
