# Copyright 2026 The policycert Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.


"""End-to-end checks of the policycert command-line tool.

The binary is taken from POLICYCERT_CLI; configs from POLICYCERT_SOURCE_DIR.
"""

import filecmp
import json
import os
import subprocess
from pathlib import Path

import pytest

CLI = os.environ.get("POLICYCERT_CLI", "policycert")
SOURCE = Path(os.environ.get("POLICYCERT_SOURCE_DIR", Path(__file__).resolve().parents[2]))


def run(*args, cwd=None):
    proc = subprocess.run([CLI, *map(str, args)], capture_output=True, text=True, cwd=cwd)
    report = None
    if proc.stdout.strip().startswith("{"):
        report = json.loads(proc.stdout)
    return proc.returncode, report, proc.stderr


@pytest.fixture
def samples(tmp_path):
    path = tmp_path / "samples.json"
    path.write_text(json.dumps([i / 10 for i in range(10)]))
    return path


def test_failprob_zero_failures(tmp_path):
    code, report, _ = run("bound", "--measure", "failprob", "--k", 0, "--n", 10)
    assert code == 0
    assert report["schema_version"] == 1
    assert report["bound"] == pytest.approx(1 - 0.2 ** (1 / 10), abs=1e-12)
    assert report["bound"] == pytest.approx(0.148660, abs=1e-6)


def test_var_bound_from_file(samples):
    code, report, _ = run("bound", "--in", samples, "--tau", 0.5)
    assert code == 0
    assert report["measure"] == "var"
    assert report["k_index"] is not None
    assert report["bound"] in [i / 10 for i in range(10)]


def test_cvar_without_upper_bound_is_an_error(samples):
    code, report, stderr = run("bound", "--measure", "cvar", "--in", samples)
    assert code == 2
    assert report["error"]["code"] == "MissingUpperBound"
    assert report["schema_version"] == 1
    assert stderr


def test_constraint_test_exit_codes(samples):
    code, report, _ = run("test", "--in", samples, "--tau", 0.5, "--cutoff", 0.95)
    assert code == 0 and report["accepted"] is True
    code, report, _ = run("test", "--in", samples, "--tau", 0.5, "--cutoff", 0.1)
    assert code == 1 and report["accepted"] is False
    assert report["bound"]["value"] > 0.1


def test_chance_routes_agree():
    for k in range(0, 11):
        decisions = set()
        for route in ("var", "failprob"):
            code, report, _ = run("test", "--chance", "--k", k, "--n", 10, "--tau", 0.7,
                                  "--route", route)
            assert code in (0, 1)
            decisions.add(report["accepted"])
        assert len(decisions) == 1, k


def test_usage_error_exit_code():
    code, _, _ = run("bound", "--no-such-flag")
    assert code == 64


def test_config_error_exit_code(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"schema_version": 1, "kind": "bernoulli_task",\n  "slope": }')
    code, report, _ = run("bound", "--env", bad, "--n", 10)
    assert code == 65
    assert report["error"]["code"] == "ConfigError"


def test_uncorrected_selection_needs_opt_in(samples):
    code, report, _ = run("select", "--in", samples, "--in", samples, "--tau", 0.5,
                          "--correction", "none")
    assert code == 2
    assert report["error"]["code"] == "InvalidArgument"
    code, report, _ = run("select", "--in", samples, "--in", samples, "--tau", 0.5,
                          "--correction", "none", "--unsafe-no-correction")
    assert code == 0
    assert report["schema_version"] == 1


def test_select_from_environment():
    code, report, _ = run("select", "--env", SOURCE / "configs/envs/bernoulli_task.json",
                          "--random", 4, "--n", 50, "--measure", "failprob",
                          "--allow-defaulted")
    assert code == 0
    assert report["m"] == 4
    assert report["inflated_delta"] == pytest.approx(1 - 0.8 ** 0.25, abs=1e-12)
    bounds = [b["value"] for b in report["per_policy_bounds"]]
    assert report["chosen_bound"] == min(bounds)
    assert bounds[report["chosen_index"]] == min(bounds)


def test_rollout_then_bound(tmp_path):
    out = tmp_path / "rollouts.jsonl"
    env = SOURCE / "configs/envs/linear_gaussian.json"
    code, _, _ = run("rollout", "--env", env, "--n", 50, "--seed", 3, "--out", out)
    assert code == 0
    lines = out.read_text().splitlines()
    assert len(lines) == 50
    code, from_file, _ = run("bound", "--in", out)
    code2, from_env, _ = run("bound", "--env", env, "--n", 50, "--seed", 3)
    assert code == code2 == 0
    assert from_file["bound"] == from_env["bound"]


def test_shift_confidence_alpha_too_large():
    code, report, _ = run("shift-confidence", "--measure", "cvar", "--n", 100, "--alpha", 0.07)
    assert code == 2
    assert report["error"]["code"] == "AlphaTooLarge"


def test_synth_writes_plan_and_trace(tmp_path):
    out = tmp_path / "plan.json"
    env = SOURCE / "configs/envs/linear_gaussian.json"
    code, _, _ = run("synth", "--env", env, "--out", out, "--generations", 3,
                     "--population", 20, "--elites", 4, "--evaluations", 2)
    assert code == 0
    assert json.loads(out.read_text())
    assert (tmp_path / "plan_trace.csv").exists()


def test_experiment_rerun_is_byte_identical(tmp_path):
    config = SOURCE / "configs/experiments/validate_var.json"
    a, b = tmp_path / "a", tmp_path / "b"
    assert run("validate", config, "--out", a)[0] == 0
    assert run("validate", config, "--out", b, "--threads", 3)[0] == 0
    names = sorted(p.name for p in a.iterdir())
    assert names == sorted(p.name for p in b.iterdir())
    assert "summary.json" in names
    match, mismatch, errors = filecmp.cmpfiles(a, b, names, shallow=False)
    assert not mismatch and not errors
    assert json.loads((a / "summary.json").read_text())["schema_version"] == 1
