"""CLI: config resolution, summaries, artifacts, exit codes, server mode."""

import json
import re

import numpy as np
import numpy.testing as npt
import pytest
from fastapi.testclient import TestClient

import switchstop.cli as cli_mod
from switchstop.cli import main, parse_config_file, render_artifact
from switchstop.model import ValidationError
from switchstop.service import create_app

BENCH_FLAGS = ["--r", "3.0", "--sigma1", "2.0", "--sigma2", "4.0",
               "--K1", "2.0", "--K2", "3.0", "--Ktilde1", "5.0",
               "--Ktilde2", "6.0", "--lambda1", "2.0", "--lambda2", "5.0"]

CONFIG_TEXT = """\
# benchmark model
[params]
r = 3.0
sigma1 = 2.0
sigma2 = 4.0
K1 = 2.0
K2 = 3.0
Ktilde1 = 5.0
Ktilde2 = 6.0
lambda1 = 2.0
lambda2 = 5.0
"""


@pytest.fixture()
def config_file(tmp_path):
    path = tmp_path / "bench.cfg"
    path.write_text(CONFIG_TEXT)
    return path


@pytest.fixture(autouse=True)
def no_default_out(monkeypatch):
    monkeypatch.delenv("SWITCHSTOP_OUT", raising=False)


def test_solve_summary(capsys):
    assert main(["solve", *BENCH_FLAGS]) == 0
    out = capsys.readouterr().out
    assert "thresholds: a1=0.68 a2=1.86 b1=5.79 b2=8.71" in out
    assert re.search(r"pasting residual \d\.\d{2}e-\d{2} \(\d+ iterations\)", out)
    assert "verification PASS" in out


def test_config_file_with_flag_override(config_file, capsys):
    assert main(["solve", "--config", str(config_file), "--K1", "2.3"]) == 0
    out = capsys.readouterr().out
    assert "thresholds: a1=1.16 a2=1.83 b1=5.79 b2=8.71" in out


def test_missing_parameter_is_validation_error(capsys):
    assert main(["solve", "--r", "3.0"]) == 1
    err = capsys.readouterr().err
    assert "missing parameter params.sigma1" in err


def test_invalid_parameter_is_validation_error(capsys):
    # later flags win, so the negative sigma overrides the benchmark value
    assert main(["solve", *BENCH_FLAGS, "--sigma1", "-2.0"]) == 1
    err = capsys.readouterr().err
    assert "error: sigma(1) must be positive" in err


def test_nonconvergence_exit_code(capsys):
    flags = ["--r", "3.0", "--sigma1", "2.0", "--sigma2", "2.0",
             "--K1", "0.0", "--K2", "3.0", "--Ktilde1", "0.2",
             "--Ktilde2", "3.2", "--lambda1", "0.5", "--lambda2", "0.5"]
    assert main(["solve", *flags]) == 2
    assert "error: threshold solve did not converge" in capsys.readouterr().err


def test_unknown_flag_is_usage_error(capsys):
    assert main(["solve", "--nonsense", "1.0"]) == 1
    assert "error:" in capsys.readouterr().err


def test_unreadable_config_is_io_error(tmp_path, capsys):
    assert main(["solve", "--config", str(tmp_path / "missing.cfg")]) == 4
    assert "cannot read config" in capsys.readouterr().err


def test_reduce_summary_and_default_artifact(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("SWITCHSTOP_OUT", str(tmp_path / "artifacts"))
    assert main(["reduce", "--r", "3.0", "--sigma", "2.0",
                 "--K", "2.0", "--Ktilde", "5.0"]) == 0
    out = capsys.readouterr().out
    assert "thresholds: a=1.19 b=5.81" in out
    assert re.search(r"residual \d\.\d{2}e-\d{2}", out)
    artifact = tmp_path / "artifacts" / "reduce.json"
    assert f"wrote {artifact}" in out
    payload = json.loads(artifact.read_text())
    npt.assert_allclose(payload["a"], 1.1891685887213774, rtol=1e-9)
    npt.assert_allclose(payload["b"], 5.810831411278622, rtol=1e-9)


def test_sweep_csv_artifact_deterministic(tmp_path, capsys):
    args = ["sweep", *BENCH_FLAGS, "--param", "sigma1",
            "--values", "2.0,3.0", "--format", "csv"]
    first, second = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main([*args, "--out", str(first)]) == 0
    out = capsys.readouterr().out
    assert "sigma1=2.00: a1=0.68 a2=1.86 b1=5.79 b2=8.71" in out
    assert "sigma1=3.00: a1=0.34 a2=1.82 b1=6.11 b2=8.71" in out
    assert main([*args, "--out", str(second)]) == 0
    text = first.read_text()
    assert text.splitlines()[0] == "sigma1,a1,a2,b1,b2,error"
    assert first.read_bytes() == second.read_bytes()


def test_single_value_sweep_matches_solve(tmp_path, capsys):
    sweep_out = tmp_path / "sweep.json"
    solve_out = tmp_path / "solve.json"
    assert main(["sweep", *BENCH_FLAGS, "--param", "K1", "--values", "2.0",
                 "--out", str(sweep_out)]) == 0
    assert main(["solve", *BENCH_FLAGS, "--out", str(solve_out)]) == 0
    capsys.readouterr()
    row = json.loads(sweep_out.read_text())["rows"][0]
    th = json.loads(solve_out.read_text())["solution"]["thresholds"]
    assert (row["a1"], row["a2"], row["b1"], row["b2"]) == \
        (th["a1"], th["a2"], th["b1"], th["b2"])


def test_sweep_row_error_sets_exit_code(capsys):
    assert main(["sweep", *BENCH_FLAGS, "--param", "Ktilde1",
                 "--values", "5.0,1.0"]) == 2
    out = capsys.readouterr().out
    assert "Ktilde1=5.00: a1=0.68" in out
    assert "Ktilde1=1.00: error: K(1) < Ktilde(1) violated" in out


def test_plotdata_csv_envelope(tmp_path, capsys):
    out_path = tmp_path / "plot.csv"
    assert main(["plotdata", *BENCH_FLAGS, "--grid", "101",
                 "--format", "csv", "--out", str(out_path)]) == 0
    summary = capsys.readouterr().out
    assert re.search(r"plot grid: 101 points on \[-1\.32, 10\.71\]", summary)
    rows = out_path.read_text().splitlines()
    assert rows[0] == "x,v1,v2,dv1,dv2,upper1,lower1,upper2,lower2,Lv1,Lv2,piece1,piece2"
    table = np.array([[float(v) for v in line.split(",")]
                      for line in rows[1:]])
    assert table.shape == (101, 13)
    x, v1, upper1, lower1 = table[:, 0], table[:, 1], table[:, 5], table[:, 6]
    assert np.all(v1 <= upper1 + 1e-9) and np.all(v1 >= lower1 - 1e-9)
    below_a1 = table[:, 11] == 0.0
    npt.assert_allclose(v1[below_a1], x[below_a1] - 2.0, atol=1e-12)


def test_verify_solution_round_trip(tmp_path, capsys):
    artifact = tmp_path / "solution.json"
    assert main(["solve", *BENCH_FLAGS, "--out", str(artifact)]) == 0
    capsys.readouterr()
    assert main(["verify", "--solution", str(artifact), "--grid", "2001"]) == 0
    out = capsys.readouterr().out
    assert "thresholds: a1=0.68 a2=1.86 b1=5.79 b2=8.71" in out
    assert out.count("PASS") == 5


def test_verify_tampered_solution_fails(tmp_path, capsys):
    artifact = tmp_path / "solution.json"
    assert main(["solve", *BENCH_FLAGS, "--out", str(artifact)]) == 0
    payload = json.loads(artifact.read_text())
    payload["solution"]["coefficients"]["A"][0] += 1e-3
    artifact.write_text(json.dumps(payload))
    capsys.readouterr()
    assert main(["verify", "--solution", str(artifact), "--grid", "2001"]) == 3
    assert "verification FAIL" in capsys.readouterr().out


def test_simulate_summary_and_partial_strategy_error(capsys):
    assert main(["simulate", *BENCH_FLAGS, "--start-x", "-5.0",
                 "--start-regime", "1", "--paths", "100", "--dt", "0.01",
                 "--seed", "7", "--no-antithetic", "--horizon", "5.0"]) == 0
    out = capsys.readouterr().out
    assert "estimate -7.00 +/- 0.00 (95% CI, 100 paths)" in out
    assert "stopped first: P1 1.0000, P2 0.0000, truncated 0.0000" in out

    assert main(["simulate", *BENCH_FLAGS, "--start-x", "3.0",
                 "--start-regime", "1", "--a1", "0.5"]) == 1
    assert "strategy override requires all of" in capsys.readouterr().err


def test_simulate_config_sim_section(tmp_path, capsys):
    cfg = tmp_path / "sim.cfg"
    cfg.write_text(CONFIG_TEXT + "\n[sim]\ndt = 0.01\npaths = 100\nseed = 7\n"
                   "antithetic = false\nhorizon = 5.0\n"
                   "[start]\nx = -5.0\nregime = 1\n")
    assert main(["simulate", "--config", str(cfg)]) == 0
    assert "estimate -7.00" in capsys.readouterr().out


# ---- server mode through a patched HTTP transport ----

@pytest.fixture()
def fake_server(monkeypatch):
    client = TestClient(create_app())

    def fake_post(url, json=None, timeout=None):
        assert url.startswith("http://svc")
        return client.post(url[len("http://svc"):], json=json)

    monkeypatch.setattr(cli_mod.httpx, "post", fake_post)
    return "http://svc"


def test_server_mode_solve(fake_server, capsys):
    assert main(["solve", *BENCH_FLAGS, "--server", fake_server]) == 0
    out = capsys.readouterr().out
    assert "thresholds: a1=0.68 a2=1.86 b1=5.79 b2=8.71" in out
    assert "verification PASS" in out


def test_server_mode_maps_validation_errors(fake_server, capsys):
    assert main(["solve", *BENCH_FLAGS, "--sigma1", "-1.0",
                 "--server", fake_server]) == 1
    assert "error: sigma(1) must be positive" in capsys.readouterr().err


def test_server_mode_maps_solver_errors(fake_server, capsys):
    flags = ["--r", "3.0", "--sigma1", "2.0", "--sigma2", "2.0",
             "--K1", "0.0", "--K2", "3.0", "--Ktilde1", "0.2",
             "--Ktilde2", "3.2", "--lambda1", "0.5", "--lambda2", "0.5"]
    assert main(["solve", *flags, "--server", fake_server]) == 2
    assert "did not converge" in capsys.readouterr().err


# ---- config parsing units ----

def test_parse_config_sections_and_dotted_keys(tmp_path):
    path = tmp_path / "mix.cfg"
    path.write_text("; comment\ntop = 1\n[params]\nr = '3.0'\n"
                    "[output]\nformat = csv\n")
    assert parse_config_file(path) == {"top": "1", "params.r": "3.0",
                                       "output.format": "csv"}


def test_parse_config_rejects_duplicates_and_garbage(tmp_path):
    path = tmp_path / "dup.cfg"
    path.write_text("a = 1\na = 2\n")
    with pytest.raises(ValidationError, match="duplicate key 'a'"):
        parse_config_file(path)
    path.write_text("not a pair\n")
    with pytest.raises(ValidationError, match="expected 'key = value'"):
        parse_config_file(path)
    path.write_text("[]\n")
    with pytest.raises(ValidationError, match="empty section name"):
        parse_config_file(path)


def test_render_artifact_key_value_csv():
    text = render_artifact("reduce", {"a": 1.5, "nested": {"b": 2}}, "csv")
    lines = text.splitlines()
    assert lines[0] == "key,value"
    assert "a,1.5" in lines
    assert "nested.b,2" in lines
