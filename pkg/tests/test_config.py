import json

import pytest

from src.config import Settings
from src.errors import ConfigError, MdimLabError, UncoverableError
from src.pipelines.models import load_experiment


def test_settings_defaults():
    settings = Settings()
    assert settings.TRUNCATION_RADIUS == 32
    assert settings.EXACT_SEPARATED_MAX_CANDIDATES == 4096
    assert settings.MDIM_WORD_BUDGET == 1024
    assert settings.TRACING_ENABLED is False


def test_settings_env_override(monkeypatch):
    monkeypatch.setenv("MDIMLAB_TRUNCATION_RADIUS", "16")
    monkeypatch.setenv("MDIMLAB_WORKERS", "4")
    settings = Settings()
    assert settings.TRUNCATION_RADIUS == 16
    assert settings.WORKERS == 4


def test_exit_codes():
    assert ConfigError.exit_code == 2
    assert UncoverableError.exit_code == 3
    assert issubclass(ConfigError, ValueError)
    assert issubclass(UncoverableError, MdimLabError)


def test_load_experiment_toml(tmp_path):
    path = tmp_path / "run.toml"
    path.write_text(
        'seed = 7\n[system.alphabet]\nkind = "discrete"\nparams = { size = 3 }\n'
        "[mdim]\neps_grid = [0.5, 0.4]\nn_grid = [2, 3]\n"
    )
    config = load_experiment(path)
    assert config.seed == 7
    assert config.system.alphabet.params == {"size": 3}
    assert config.mdim.n_grid == [2, 3]
    assert config.irregular is None


def test_load_experiment_overrides(tmp_path):
    path = tmp_path / "run.json"
    path.write_text(json.dumps({"seed": 1, "mdim": {"eps_grid": [0.5], "n_grid": [1]}}))
    config = load_experiment(path, seed=9, output_dir=tmp_path / "out", workers=None)
    assert config.seed == 9
    assert config.output_dir == tmp_path / "out"
    assert config.workers is None


def test_load_experiment_missing_file(tmp_path):
    with pytest.raises(ConfigError, match="not found"):
        load_experiment(tmp_path / "absent.toml")


def test_load_experiment_bad_toml(tmp_path):
    path = tmp_path / "broken.toml"
    path.write_text("seed = = 3\n")
    with pytest.raises(ConfigError, match="cannot parse"):
        load_experiment(path)


def test_load_experiment_invalid_schedule(tmp_path):
    path = tmp_path / "run.toml"
    path.write_text(
        "[irregular]\ns_target = 0.1\n"
        "[irregular.schedule]\neps0 = 0.5\ngamma = 0.1\nalpha1 = 0.3\nalpha2 = 0.3\nlevels = 2\n"
    )
    with pytest.raises(ConfigError, match="invalid experiment config"):
        load_experiment(path)
