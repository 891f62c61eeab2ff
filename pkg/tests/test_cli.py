import csv
import io
import json
import os
import subprocess
import sys

import numpy as np
import pytest

from eqtoeplitz import cli
from eqtoeplitz.experiments import CATALOG, check_catalog


def _run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_list_experiments(capsys):
    code, out, _ = _run(["list-experiments"], capsys)
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == len(CATALOG)
    names = [ln.split()[0] for ln in lines]
    assert sorted(names) == sorted(CATALOG) and len(set(names)) == len(names)
    for k in range(1, 11):
        assert sum(f"[criterion {k}]" in ln for ln in lines) == 1
    assert check_catalog()


def test_config_defaults_and_roundtrip():
    cfg = cli.default_config("thm3-commutator")
    assert cfg.t == [6.0] and cfg.L == [3]
    again = cli.ExperimentConfig.from_json(cfg.to_json())
    assert again == cfg


@pytest.mark.parametrize("text,needle", [
    ('{"experiment": "eq8", "t": [0.5]}', "field 't'"),
    ('{"experiment": "eq8", "N": [-1]}', "field 'N'"),
    ('{"experiment": "eq8", "L": []}', "field 'L'"),
    ('{"experiment": "eq8", "tolerance": 0}', "field 'tolerance'"),
    ('{"experiment": "eq8", "padding": 1.5}', "field 'padding'"),
    ('{"experiment": "nope"}', "unknown experiment"),
    ('{"t": [3]}', "field 'experiment': required"),
    ('{"experiment": "eq8",\n "typo": 1}', "line 2"),
    ('{"experiment": "eq8",\n "t": [3,]}', "line 2"),
])
def test_config_validation(text, needle):
    with pytest.raises(cli.ConfigError, match=needle.replace("'", ".")):
        cli.ExperimentConfig.from_json(text)


def test_eq8_cli_pass(tmp_path, capsys):
    code, out, _ = _run(["run", "--experiment", "eq8", "--t", "5", "--out", str(tmp_path)], capsys)
    assert code == 0 and "PASS" in out
    summary = json.loads((tmp_path / "eq8.json").read_text())
    assert summary["pass"] is True and summary["criterion"] == 1
    raw = (tmp_path / "eq8.csv").read_bytes()
    assert raw.endswith(b"\r\n")
    rows = list(csv.DictReader(io.StringIO(raw.decode())))
    assert len(rows) == 3
    assert all(abs(float(r["value"]) - np.pi) < 1e-6 for r in rows)


def test_deterministic_across_jobs():
    a = cli.run_to_bytes("eq8", jobs=1)
    b = cli.run_to_bytes("eq8", jobs=2)
    assert a == b and a == cli.run_to_bytes("eq8", jobs=1)


def test_thm1_identical_pair_has_zero_deviation(tmp_path):
    z = {"type": "laurent", "coeffs": [[0, 1, 1.0], [1, 0, 0.5]]}
    cfg = {"experiment": "thm1-trace", "t": [3], "N": [50], "params": {"pairs": [{"f": z, "g": z}]}}
    rows, summary = cli.run_experiment(cli.ExperimentConfig.from_dict(cfg))
    assert summary["pass"] and all(r["trace"] == 0 and r["err"] == 0 for r in rows)


def test_thm3_below_min_n_fails(tmp_path, capsys):
    p = tmp_path / "cfg.json"
    p.write_text(json.dumps({"experiment": "thm3-commutator", "N": [20], "L": [1]}))
    code, out, err = _run(["run", "--config", str(p), "--out", str(tmp_path)], capsys)
    assert code == 1 and "FAIL" in out
    assert '"N_ok": false' in err


def test_bad_config_exit_code(tmp_path, capsys):
    p = tmp_path / "cfg.json"
    p.write_text('{"experiment": "eq8", "t": "three"}')
    code, _, err = _run(["run", "--config", str(p)], capsys)
    assert code == 2 and "config error" in err
    code, _, err = _run(["run", "--config", str(tmp_path / "missing.json")], capsys)
    assert code == 2
    code, _, err = _run(["run", "--experiment", "eq8", "--jobs", "0"], capsys)
    assert code == 2


def test_output_env_var(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv(cli.OUT_ENV, str(tmp_path / "envout"))
    code, _, _ = _run(["run", "--experiment", "eq8", "--t", "3"], capsys)
    assert code == 0 and (tmp_path / "envout" / "eq8.csv").exists()


def test_module_entry_point(tmp_path):
    env = dict(os.environ, **{cli.OUT_ENV: str(tmp_path)})
    res = subprocess.run([sys.executable, "-m", "eqtoeplitz.cli", "list-experiments"],
                         capture_output=True, text=True, env=env)
    assert res.returncode == 0 and "eq8" in res.stdout
