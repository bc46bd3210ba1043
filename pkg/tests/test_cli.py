import csv
import io
import json

import pytest

from hardylab.cli import (CSV_HEADER, DEFAULT_TOLERANCES, EXIT_COMPUTE, EXIT_CONFIG, EXIT_FAILED, EXIT_OK,
                          SCHEMA_VERSION, dumps, main, parse_config)
from hardylab.errors import ConfigError


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_analyze_dilation(capsys):
    code, out, _ = run_cli(capsys, "analyze", "--family", "dilation", "--param", "c=1", "--p", "2", "--t", "1")
    assert code == EXIT_OK
    rep = json.loads(out)
    assert rep["schema_version"] == SCHEMA_VERSION
    assert rep["dw"] == "infinity"
    assert rep["delta"] == pytest.approx(1, abs=1e-3)
    assert rep["norm"] == pytest.approx(0.60653, abs=1e-5)
    assert rep["failures"] == []
    assert rep["tolerances"] == DEFAULT_TOLERANCES


def test_analyze_is_deterministic(capsys):
    argv = ("analyze", "--family", "translation", "--p", "2")
    _, first, _ = run_cli(capsys, *argv)
    _, second, _ = run_cli(capsys, *argv)
    assert first == second


def test_analyze_example2_unbounded(capsys):
    code, out, _ = run_cli(capsys, "analyze", "--family", "example2", "--p", "2")
    assert code == EXIT_OK
    assert json.loads(out)["boundedness"]["verdict"] == "Unbounded"


def test_norm_table(capsys):
    code, out, _ = run_cli(capsys, "norm", "--family", "dilation", "--p", "1", "--p", "2", "--t", "0", "--t", "2")
    assert code == EXIT_OK
    table = json.loads(out)["norm_table"]
    assert len(table) == 4
    assert table[-1]["norm"] == pytest.approx(0.36787944117144233)


def test_semigroup_check_model(capsys):
    code, out, _ = run_cli(capsys, "semigroup-check", "--family", "example1")
    assert code == EXIT_OK
    rep = json.loads(out)
    assert rep["model_function"]["kind"] == "koenigs"
    assert rep["model_function"]["coefficient"] == pytest.approx([-1, 0], abs=1e-8)


def test_spectrum_translation(capsys):
    code, out, _ = run_cli(capsys, "spectrum", "--family", "translation", "--nu-grid", "-1:1:3,-1:1:3")
    assert code == EXIT_OK
    sp = json.loads(out)["spectrum"]
    assert sp["sigma_pi"] == []
    assert sp["scan_bounds"]["nu_grid"] == "-1:1:3,-1:1:3"


def test_spectrum_unbounded_is_compute_error(capsys):
    code, _, err = run_cli(capsys, "spectrum", "--family", "example1")
    assert code == EXIT_COMPUTE
    rep = json.loads(err)
    assert rep["error"] == "ComputeError" and rep["operation"] == "spectrum"


def test_sweep_t_csv(capsys):
    code, out, _ = run_cli(capsys, "sweep", "--axis", "t", "--values", "0,0.5,1,2", "--family", "dilation")
    assert code == EXIT_OK
    rows = list(csv.reader(io.StringIO(out)))
    assert tuple(rows[0]) == CSV_HEADER
    assert len(rows) == 5
    for axis, measured, predicted, err in rows[1:]:
        assert float(predicted) == pytest.approx(2.718281828459045 ** (-float(axis) / 2))
        assert float(err) < 1e-6


def test_sweep_n_increasing(capsys):
    code, out, _ = run_cli(capsys, "sweep", "--axis", "n", "--values", ",".join(map(str, range(1, 11))),
                           "--family", "translation")
    assert code == EXIT_OK
    measured = [float(r[1]) for r in list(csv.reader(io.StringIO(out)))[1:]]
    assert len(measured) == 10
    assert all(b > a for a, b in zip(measured, measured[1:]))


def test_sweep_nu_json(capsys):
    code, out, _ = run_cli(capsys, "sweep", "--axis", "nu", "--values", "1,1i,-1-1i", "--family", "translation",
                           "--format", "json")
    assert code == EXIT_OK
    rows = json.loads(out)["rows"]
    assert len(rows) == 3 and all(r["measured"] < 1e-8 for r in rows)


@pytest.mark.parametrize("argv", [
    ("sweep", "--axis", "t", "--values", ""),
    ("analyze", "--family", "rotation"),
    ("analyze", "--family", "dilation", "--param", "c=abc"),
    ("analyze", "--family", "dilation", "--param", "k=1"),
    ("analyze", "--p", "-1"),
    ("analyze", "--tol", "bogus=1"),
    ("analyze", "--tol", "norm=-1"),
    ("norm", "--format", "csv"),
    ("spectrum", "--nu-grid", "1:2"),
    ("frobnicate",),
])
def test_config_errors(capsys, argv):
    code, _, err = run_cli(capsys, *argv)
    assert code == EXIT_CONFIG
    assert json.loads(err)["error"] == "ConfigError"


def test_tolerance_override_can_fail_a_check(capsys):
    code, out, _ = run_cli(capsys, "semigroup-check", "--family", "example2", "--tol", "semigroup_law=1e-30")
    assert code == EXIT_FAILED
    assert "semigroup_law" in json.loads(out)["failures"]


def test_out_file(tmp_path, capsys):
    path = tmp_path / "rep.json"
    code, out, _ = run_cli(capsys, "norm", "--family", "translation", "--out", str(path))
    assert code == EXIT_OK and out == ""
    assert json.loads(path.read_text())["command"] == "norm"


def test_suite_single_criterion(capsys):
    code, out, err = run_cli(capsys, "suite", "--criterion", "1")
    assert code == EXIT_OK
    assert "[PASS]  1" in err
    assert json.loads(out)["criteria"][0]["passed"] is True


def test_parse_config_negative_values():
    cfg = parse_config(["sweep", "--axis", "t", "--t", "-0"])
    assert cfg.values == [0.0]
    with pytest.raises(ConfigError):
        parse_config(["analyze", "--t", "-1"])


def test_dumps_formatting():
    text = dumps({"b": 0.1, "a": [1j, float("nan"), float("inf")], "c": None})
    data = json.loads(text)
    assert list(data) == ["a", "b", "c"]
    assert data["a"] == [[0.0, 1.0], "nan", "inf"]
    assert "0.10000000000000001" in text
