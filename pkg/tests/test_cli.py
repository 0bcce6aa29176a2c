import json
import math

import pandas as pd
import pytest
from click.testing import CliRunner

from src.cli import main

SPACE_CONFIG = """
[system.alphabet]
kind = "interval_grid"
params = { points = 257 }

[space]
eps_grid = [0.2, 0.1, 0.05]
cover_eps = [0.2]
"""

BROKEN_SPACE_CONFIG = """
[system.alphabet]
kind = "dense"
params = { matrix = [[0, 1, 5], [1, 0, 1], [5, 1, 0]] }

[space]
eps_grid = [0.5, 0.25]
"""

MDIM_CONFIG = """
seed = 3

[mdim]
eps_grid = [0.5, 0.4]
n_grid = [2, 3, 4]

[mdim.cross_check]
eps = 0.5
depth = 6
N = 2
n_max = 6
n_grid = [2, 4, 6]

[mdim.katok]
eps = 0.5
deltas = [0.1]
depth = 6
n_grid = [2, 3, 4, 5]
"""

IRREGULAR_CONFIG = """
[irregular.schedule]
eps0 = 0.8
gamma = 0.5
alpha1 = 0.2
alpha2 = 0.8
levels = 2
bound_a = 1000
bound_b = 1000
base_sample_size = 4
"""

RELAXED_CONFIG = """
[irregular]
s_target = 0.2

[irregular.schedule]
eps0 = 0.8
gamma = 0.05
alpha1 = 0.2
alpha2 = 0.8
levels = 2
nhat_min = [5, 40]
bound_a = 4096
bound_b = 4096
enforce_tempered = false
base_sample_size = 3
"""

CONSTANT_CONFIG = """
[observable]
kind = "constant"
value = 0.5

[irregular]
s_target = 0.2

[irregular.schedule]
eps0 = 0.8
gamma = 0.05
alpha1 = 0.2
alpha2 = 0.8
levels = 2
"""


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def config_file(tmp_path):
    def write(text: str, name: str = "experiment.toml"):
        path = tmp_path / name
        path.write_text(text)
        return path

    return write


def _summary(path):
    return json.loads(path.read_text())


def test_space_command(runner, config_file, tmp_path):
    out = tmp_path / "space"
    result = runner.invoke(main, ["space", "--config", str(config_file(SPACE_CONFIG)), "--out", str(out)])
    assert result.exit_code == 0, result.output
    summary = _summary(out / "space.json")
    assert summary["schema_version"] == 1
    assert summary["metric"]["passed"]
    assert summary["box_dimension"]["fitted_slope"] == pytest.approx(1.0, abs=0.2)
    counts = pd.read_csv(out / "box_counts.csv")
    assert len(counts) == 3
    assert (counts["bound_side"] == "upper").all()


def test_space_command_rejects_non_metric(runner, config_file, tmp_path):
    out = tmp_path / "broken"
    result = runner.invoke(
        main, ["space", "--config", str(config_file(BROKEN_SPACE_CONFIG)), "--out", str(out)]
    )
    assert result.exit_code == 2
    summary = _summary(out / "space.json")
    assert not summary["metric"]["passed"]
    assert not (out / "box_counts.csv").exists()


def test_missing_config_file(runner, tmp_path):
    result = runner.invoke(main, ["mdim", "--config", str(tmp_path / "absent.toml")])
    assert result.exit_code == 2
    assert "not found" in result.output


def test_missing_block(runner, config_file, tmp_path):
    result = runner.invoke(
        main, ["irregular", "--config", str(config_file(SPACE_CONFIG)), "--out", str(tmp_path)]
    )
    assert result.exit_code == 2


def test_mdim_command(runner, config_file, tmp_path):
    out = tmp_path / "mdim"
    result = runner.invoke(main, ["mdim", "--config", str(config_file(MDIM_CONFIG)), "--out", str(out)])
    assert result.exit_code == 0, result.output
    summary = _summary(out / "mdim.json")
    assert summary["upper"] == pytest.approx(0.0, abs=1e-9)
    cross = summary["cross_check"]
    assert cross["bowen"]["value"] == pytest.approx(0.6931, abs=2e-3)
    assert cross["bowen_below_capacity"]
    assert cross["capacity_below_separated"]
    assert summary["katok"][0]["upper"] == pytest.approx(0.6931, abs=1e-3)
    assert summary["katok_spread"] == 0.0
    rows = pd.read_csv(out / "mdim_rows.csv")
    assert list(rows["eps"]) == [0.5, 0.4]
    assert (out / "plot_htop.csv").exists()
    counts = pd.read_csv(out / "mdim_counts.csv")
    assert len(counts) == 6


def test_mdim_outputs_ignore_worker_count(runner, config_file, tmp_path):
    path = config_file(MDIM_CONFIG)
    for workers, name in ((1, "serial"), (3, "threaded")):
        result = runner.invoke(
            main,
            ["mdim", "--config", str(path), "--out", str(tmp_path / name), "--workers", str(workers)],
        )
        assert result.exit_code == 0, result.output
    for table in ("mdim_rows.csv", "mdim_counts.csv", "mdim.json"):
        serial = (tmp_path / "serial" / table).read_bytes()
        assert serial == (tmp_path / "threaded" / table).read_bytes()


def test_mdim_subadditivity_on_a_product(runner, config_file, tmp_path):
    config = """
[system.alphabet]
kind = "product"

[[system.alphabet.params.factors]]
kind = "discrete"
params = { size = 2 }

[[system.alphabet.params.factors]]
kind = "discrete"
params = { size = 2 }

[mdim]
eps_grid = [0.5, 0.4]
n_grid = [1, 2]
"""
    out = tmp_path / "product"
    result = runner.invoke(main, ["mdim", "--config", str(config_file(config)), "--out", str(out)])
    assert result.exit_code == 0, result.output
    subadditivity = _summary(out / "mdim.json")["subadditivity"]
    assert subadditivity["passed"]
    assert len(subadditivity["factor_uppers"]) == 2


def test_irregular_command(runner, config_file, tmp_path):
    out = tmp_path / "irregular"
    result = runner.invoke(
        main, ["irregular", "--config", str(config_file(IRREGULAR_CONFIG)), "--out", str(out)]
    )
    assert result.exit_code == 0, result.output
    summary = _summary(out / "irregular.json")
    assert not summary["irregular_empty"]
    assert summary["schedule"]["t"] == [26, 102]
    assert all(row["tempered"] for row in summary["schedule"]["diagnostics"])
    assert all(level["passed"] for level in summary["levels"])
    birkhoff = pd.read_csv(out / "plot_birkhoff.csv")
    assert list(birkhoff["t"]) == [26, 102]
    assert (out / "levels" / "level_2" / "centers.txt").exists()

    bound = summary["bowen_lower_bound"]
    balls = pd.read_csv(out / "ball_bounds.csv")
    assert bound["value"] == pytest.approx(balls["exponent"].min())
    assert bound["value"] > 0
    assert bound["certified"]
    assert bound["reasons"] == []
    assert bound["certified_eps"] == pytest.approx(0.1)
    assert bound["implied_target"] == pytest.approx(bound["value"] / math.log(4) + 2.0)
    assert bound["bound_side"] == "lower"


def test_relaxed_schedule_is_not_certified(runner, config_file, tmp_path):
    out = tmp_path / "relaxed"
    result = runner.invoke(
        main, ["irregular", "--config", str(config_file(RELAXED_CONFIG)), "--out", str(out)]
    )
    assert result.exit_code == 0, result.output
    summary = _summary(out / "irregular.json")
    assert summary["schedule"]["t"] == [5, 69]
    bound = summary["bowen_lower_bound"]
    # S = 4 gamma makes the target exponent zero
    assert bound["target_exponent"] == pytest.approx(0.0, abs=1e-12)
    assert summary["ball_bound"]["passed"]
    assert not bound["certified"]
    assert any("relaxed" in reason for reason in bound["reasons"])


def test_irregular_command_fails_a_strong_ball_bound(runner, config_file, tmp_path):
    config = "[irregular]\ns_target = 3.0\n" + IRREGULAR_CONFIG
    out = tmp_path / "strong"
    result = runner.invoke(main, ["irregular", "--config", str(config_file(config)), "--out", str(out)])
    assert result.exit_code == 4
    summary = _summary(out / "irregular.json")
    assert not summary["bowen_lower_bound"]["certified"]
    assert summary["ball_bound"]["violations"]


def test_irregular_with_constant_observable(runner, config_file, tmp_path):
    out = tmp_path / "constant"
    result = runner.invoke(
        main, ["irregular", "--config", str(config_file(CONSTANT_CONFIG)), "--out", str(out)]
    )
    assert result.exit_code == 0, result.output
    assert _summary(out / "irregular.json")["irregular_empty"]
    assert not (out / "levels").exists()


def test_report_command(runner, config_file, tmp_path):
    mdim_out = tmp_path / "runs" / "mdim"
    irregular_out = tmp_path / "runs" / "irregular"
    runner.invoke(main, ["mdim", "--config", str(config_file(MDIM_CONFIG, "m.toml")), "--out", str(mdim_out)])
    runner.invoke(
        main,
        ["irregular", "--config", str(config_file(IRREGULAR_CONFIG, "i.toml")), "--out", str(irregular_out)],
    )
    report = tmp_path / "report"
    result = runner.invoke(main, ["report", str(mdim_out), str(irregular_out), "--out", str(report)])
    assert result.exit_code == 0, result.output
    htop = pd.read_csv(report / "report_htop.csv")
    assert set(htop["run"]) == {"mdim"}
    pd.testing.assert_frame_equal(htop.drop(columns="run"), pd.read_csv(mdim_out / "mdim_rows.csv"))
    birkhoff = pd.read_csv(report / "report_birkhoff.csv")
    assert set(birkhoff["run"]) == {"irregular"}
    summary = _summary(report / "report.json")
    assert sorted(summary["runs"]) == ["irregular", "mdim"]


def test_report_on_missing_run(runner, tmp_path):
    result = runner.invoke(main, ["report", str(tmp_path / "nowhere"), "--out", str(tmp_path / "r")])
    assert result.exit_code == 2


def test_report_rejects_runs_sharing_a_name(runner, config_file, tmp_path):
    first = tmp_path / "a" / "mdim"
    second = tmp_path / "b" / "mdim"
    for out in (first, second):
        runner.invoke(main, ["mdim", "--config", str(config_file(MDIM_CONFIG, "m.toml")), "--out", str(out)])
    report = tmp_path / "report"
    result = runner.invoke(main, ["report", str(first), str(second), "--out", str(report)])
    assert result.exit_code == 2
    assert "share a name: mdim" in result.output
    assert not (report / "report.json").exists()


def test_mode_option_belongs_to_irregular(runner, config_file, tmp_path):
    help_text = runner.invoke(main, ["irregular", "--help"]).output
    assert "--mode [exact|sampled]" in help_text
    assert "--mode" not in runner.invoke(main, ["mdim", "--help"]).output
    result = runner.invoke(
        main, ["mdim", "--config", str(config_file(MDIM_CONFIG)), "--mode", "exact"]
    )
    assert result.exit_code == 2
    assert "No such option" in result.output
