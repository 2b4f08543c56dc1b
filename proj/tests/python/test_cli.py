import json
import os
import subprocess

import pytest

CLI = os.environ.get("QESTKIT_CLI", "qestkit")


def run(*args, env=None):
    full_env = dict(os.environ)
    if env:
        full_env.update(env)
    return subprocess.run(
        [CLI, *args], capture_output=True, text=True, env=full_env
    )


def run_json(*args, env=None):
    proc = run(*args, env=env)
    assert proc.returncode == 0, proc.stderr
    return json.loads(proc.stdout)


def test_classify_qutrit_point():
    out = run_json(
        "classify", "--zoo", "qutrit-qc", "--param", "c=2", "--theta", "0.2,0.3"
    )
    report = out["report"]
    assert not report["classical"]["verdict"]
    assert report["quasi_classical"]["verdict"]
    assert not report["d_invariant"]["verdict"]
    assert report["asymptotically_classical"]["verdict"]


def test_classify_grid_fixed_radius():
    out = run_json(
        "classify", "--zoo", "qubit-fixed-radius", "--grid", "0.1:0.4:3x0.1:0.4:3"
    )
    assert out["global_report"]["global"]["d_invariant"]
    assert not out["global_report"]["global"]["asymptotically_classical"]
    assert out["bloch_report"]["agrees"]


def test_bounds_equatorial_closed_form_and_numeric():
    out = run_json("bounds", "--zoo", "qubit-equatorial", "--theta", "0.5,0")
    assert out["sld_bound"] == pytest.approx(1.75, abs=1e-10)
    assert out["holevo"]["value"] == pytest.approx(1.75, abs=1e-10)
    assert out["holevo"]["method"] == "closed-form-sld"

    numeric = run_json(
        "bounds", "--zoo", "qubit-equatorial", "--theta", "0.5,0",
        "--method", "numeric",
    )
    assert numeric["holevo"]["method"] == "numeric"
    assert numeric["holevo"]["value"] == pytest.approx(out["holevo"]["value"], abs=1e-4)


def test_bounds_budget_exhaustion_exits_3():
    proc = run(
        "bounds", "--zoo", "qubit-fixed-radius", "--theta", "0.3,0.2",
        "--method", "numeric", "--budget", "3",
    )
    assert proc.returncode == 3
    out = json.loads(proc.stdout)
    assert not out["holevo"]["converged"]


def test_bad_inputs_exit_1():
    assert run("classify", "--zoo", "no-such-model", "--theta", "0").returncode == 1
    assert run("classify", "--zoo", "qubit-full").returncode == 1
    assert run(
        "bounds", "--zoo", "qubit-full", "--theta", "0.1,0.2,0.3",
        "--method", "nonsense",
    ).returncode == 1
    assert run("verify", "--dim", "3", "--params", "9").returncode == 1


def test_rank_deficient_model_exits_2(tmp_path):
    model = {
        "name": "degenerate",
        "dim": 2,
        "params": 2,
        "kind": "explicit",
        "points": [
            {
                "theta": [0.0, 0.0],
                "rho": [
                    [[0.75, 0.0], [0.0, 0.0]],
                    [[0.0, 0.0], [0.25, 0.0]],
                ],
                "drho": [
                    [[[0.0, 0.0], [0.5, 0.0]], [[0.5, 0.0], [0.0, 0.0]]],
                    [[[0.0, 0.0], [0.5, 0.0]], [[0.5, 0.0], [0.0, 0.0]]],
                ],
            }
        ],
    }
    path = tmp_path / "degenerate.json"
    path.write_text(json.dumps(model))
    proc = run("classify", "--model", str(path), "--theta", "0,0")
    assert proc.returncode == 2
    assert "error:" in proc.stderr


def test_malformed_model_file_exits_1(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    assert run("classify", "--model", str(path), "--theta", "0").returncode == 1


def test_weight_file_must_be_positive_definite(tmp_path):
    path = tmp_path / "weight.json"
    path.write_text(json.dumps([[1.0, 2.0], [2.0, 1.0]]))
    proc = run(
        "bounds", "--zoo", "qubit-equatorial", "--theta", "0.5,0",
        "--weight", str(path),
    )
    assert proc.returncode == 1


def test_verify_subcommand_passes_and_is_deterministic():
    a = run("verify", "--random", "5", "--dim", "3", "--params", "2")
    b = run("verify", "--random", "5", "--dim", "3", "--params", "2")
    assert a.returncode == 0
    assert a.stdout == b.stdout
    report = json.loads(a.stdout)
    assert report["pass"]
    assert len(report["models"]) == 5


def test_verify_seed_env_override():
    base = run("verify", "--random", "3", "--dim", "2", "--params", "2")
    seeded = run(
        "verify", "--random", "3", "--dim", "2", "--params", "2",
        env={"QESTKIT_SEED": "7"},
    )
    assert seeded.returncode == 0
    assert json.loads(seeded.stdout)["config"]["seed"] == 7
    assert base.stdout != seeded.stdout


def test_zoo_list_and_describe():
    out = run_json("zoo")
    assert len(out["models"]) == 5
    described = run_json("zoo", "--describe", "qutrit-qc")
    assert described["model"]["dim"] == 3
    assert run("zoo", "--describe", "no-such-model").returncode == 1


def test_table_format_renders():
    proc = run(
        "classify", "--zoo", "qutrit-qc", "--theta", "0.2,0.3",
        "--format", "table",
    )
    assert proc.returncode == 0
    assert "quasi-classical" in proc.stdout
