import json
import re

import pandas as pd
import pytest

from cli import EXIT_ERROR, EXIT_OK, Task, build_parser, load_run_config, main, parse_run_config
from utils.errors import ConfigError

ESTIMATE = {
    "task": "estimate",
    "observables": [{"id": "Z", "kind": "pauli", "data": "Z"}],
    "state": {"kind": "basis", "bits": "0"},
    "epsilon": 0.5,
    "seed": 3,
}

COST = {
    "task": "cost",
    "cost": [
        {"scenario": "kRDM", "params": {"N": 10, "k": 1, "epsilon": 0.1}},
        {"scenario": "hybrid-exp", "params": {"M": 100, "epsilon": 1.0, "alpha": 1.0}},
    ],
}


def write_config(tmp_path, data, name="run.json"):
    path = tmp_path / name
    path.write_text(json.dumps(data) if not isinstance(data, str) else data)
    return str(path)


def test_parser_flags():
    args = build_parser().parse_args(["--config", "x.json", "--mode", "circuit", "--max-qubits", "20"])
    assert args.mode == "circuit"
    assert args.max_qubits == 20
    with pytest.raises(SystemExit):
        build_parser().parse_args(["--config", "x.json", "--mode", "quantum"])


def test_estimate_to_stdout(tmp_path, capsys):
    code = main(["--config", write_config(tmp_path, ESTIMATE)])
    assert code == EXIT_OK
    report = json.loads(capsys.readouterr().out)
    assert report["task"] == "estimate"
    assert report["seed"] == 3
    assert report["references"] == [1.0]
    assert abs(report["estimates"][0] - 1.0) <= 0.5


def test_seed_override_wins(tmp_path):
    out = tmp_path / "report.json"
    code = main(["--config", write_config(tmp_path, ESTIMATE), "--seed", "42", "--out", str(out)])
    assert code == EXIT_OK
    assert json.loads(out.read_text())["seed"] == 42


def test_cost_writes_json_and_sibling_csv(tmp_path):
    out = tmp_path / "reports" / "cost.json"
    assert main(["--config", write_config(tmp_path, COST), "--out", str(out)]) == EXIT_OK
    payload = json.loads(out.read_text())
    assert payload["task"] == "cost"
    assert [r["scenario"] for r in payload["reports"]] == ["kRDM", "hybrid-exp"]
    table = pd.read_csv(out.with_suffix(".csv"))
    assert set(table["scenario"]) == {"kRDM", "hybrid-exp"}


def test_cost_csv_only(tmp_path):
    out = tmp_path / "cost.csv"
    assert main(["--config", write_config(tmp_path, COST), "--out", str(out)]) == EXIT_OK
    assert len(pd.read_csv(out)) == 4 + 2
    assert not (tmp_path / "cost.json").exists()


def test_fixture_identity_only(tmp_path, capsys):
    config = {"task": "fixture", "fixture": {"A": [[1, 1], [1, -1]], "p": [0.25, 0.75]}}
    assert main(["--config", write_config(tmp_path, config)]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["identity_holds"]
    assert payload["targets"] == pytest.approx([1.0, -0.5])
    assert "report" not in payload


@pytest.mark.parametrize("data, message", [
    ('{"task": "estimate",\n "epsilon": }', "line 2"),
    ({"task": "estimate", "epsilon": 0.1}, "requires"),
    ({**ESTIMATE, "colour": "blue"}, "colour"),
    ({**ESTIMATE, "epsilon": -1}, "epsilon"),
    ({**ESTIMATE, "state": {"kind": "basis", "bits": "00"}}, "state"),
    ({"task": "cost", "cost": [{"scenario": "teleport"}]}, "cost"),
    ({**ESTIMATE, "task": "benchmark", "trials": 10}, "30"),
    ({"task": "fixture", "fixture": {"A": [[1, 2], [1, 1]], "p": [0.5, 0.5]}}, "fixture"),
])
def test_errors_exit_one_with_message(tmp_path, capsys, data, message):
    code = main(["--config", write_config(tmp_path, data)])
    assert code == EXIT_ERROR
    err = capsys.readouterr().err
    assert err.startswith("error:")
    assert message in err


def test_missing_config_file(tmp_path, capsys):
    assert main(["--config", str(tmp_path / "absent.json")]) == EXIT_ERROR
    assert "error:" in capsys.readouterr().err


def test_parse_run_config_defaults_and_overrides():
    cfg = parse_run_config({**ESTIMATE, "task": "benchmark"}, {"trials": None, "seed": 9})
    assert cfg.task is Task.BENCHMARK
    assert cfg.trials == 300
    assert cfg.seed == 9
    assert cfg.benchmark_spec.target is Task.ESTIMATE
    assert cfg.delta == pytest.approx(1 / 3)


def test_config_errors_name_the_field(tmp_path):
    with pytest.raises(ConfigError) as info:
        parse_run_config({**ESTIMATE, "seed": -1})
    assert info.value.field == "seed"
    with pytest.raises(ConfigError, match="JSON object"):
        parse_run_config([1, 2])
    with pytest.raises(ConfigError, match="column"):
        load_run_config(write_config(tmp_path, "{not json"))


CORRELATE = {
    "task": "correlate",
    "correlation": {
        "hamiltonian": {"kind": "pauli", "data": "Z"},
        "probes": [{"id": "X@0.3", "kind": "pauli", "data": "X", "time": 0.3}],
        "source": {"kind": "pauli", "data": "X"},
        "part": "imaginary",
    },
    "state": {"kind": "basis", "bits": "0"},
    "epsilon": 0.25,
    "seed": 6,
}


def _without_timings(raw):
    stripped = re.sub(rb"\"timings\": \{[^}]*\}", b"", raw)
    assert stripped != raw
    return stripped


@pytest.mark.parametrize("data", [ESTIMATE, CORRELATE], ids=["estimate", "correlate"])
def test_same_seed_gives_byte_identical_reports(tmp_path, data):
    config_path = write_config(tmp_path, data)
    first = tmp_path / "first.json"
    second = tmp_path / "second.json"
    assert main(["--config", config_path, "--out", str(first)]) == EXIT_OK
    assert main(["--config", config_path, "--out", str(second)]) == EXIT_OK
    assert "timings" in json.loads(first.read_text())
    assert _without_timings(first.read_bytes()) == _without_timings(second.read_bytes())
