"""
Tests for experiment configuration loading.
"""

from fractions import Fraction
from pathlib import Path

import pytest

from monopole.application.experiment_config import DEFAULT_M_LIST, load_config
from monopole.core.config import settings
from monopole.core.exceptions import ConfigError

CONFIG_DIR = Path(__file__).resolve().parent.parent / "configs"


def _write(tmp_path, text, name="experiment.toml"):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return path


def test_defaults():
    config = load_config()
    assert config.seed == settings.DEFAULT_SEED
    assert config.params.m == "1"
    assert config.verification.m_list == DEFAULT_M_LIST
    assert config.integration.method == "midpoint"


@pytest.mark.parametrize("name", sorted(p.name for p in CONFIG_DIR.glob("*.toml")))
def test_shipped_configs_load(name):
    config = load_config(CONFIG_DIR / name)
    assert config.validated_params().params.k != 0


def test_seed_override(tmp_path):
    path = _write(tmp_path, "seed = 5\n")
    assert load_config(path).seed == 5
    assert load_config(path, seed=42).seed == 42


def test_integer_m_accepted(tmp_path):
    config = load_config(_write(tmp_path, "[params]\nm = 2\n"))
    assert config.params.m == "2"
    assert config.validated_params().m_value == 2.0


def test_m_values_are_exact(tmp_path):
    config = load_config(_write(tmp_path, '[verification]\nm_list = ["2/3", 3]\n'))
    assert config.m_values() == [Fraction(2, 3), Fraction(3)]


def test_case_overrides(tmp_path):
    text = (
        "[params]\nbeta2 = -4.0\n"
        "[[closure.cases]]\nname = 'circular'\ncircular = true\noverrides = { beta2 = -2.0 }\n"
    )
    config = load_config(_write(tmp_path, text))
    case = config.closure.cases[0]
    assert config.validated_params(**case.overrides).params.beta2 == -2.0
    assert config.validated_params().params.beta2 == -4.0


@pytest.mark.parametrize("text", [
    "[params]\nmass = 1.0\n",
    "[params]\nm = 0.5\n",
    "[params]\nm = '0'\n",
    "[params]\nk = 0.0\n",
    "[params]\nalpha1 = 1.0\nbeta1 = -1.0\n",
    "[verification]\nm_list = [0.5]\n",
    "[integration]\nmethod = 'euler'\n",
    "[integration]\ndt = -1e-3\n",
    "[map]\npoints = [[1.0, 2.0]]\n",
    "[[closure.cases]]\nname = 'x'\n",
    "[[closure.cases]]\nname = 'x'\ncircular = true\noverrides = { mass = 1.0 }\n",
    "[[closure.cases]]\nname = 'x'\ncircular = true\ninitial_state = { r = 1.0, theta = 1.0 }\n",
    "seed = -1\n",
])
def test_invalid_config(tmp_path, text):
    with pytest.raises(ConfigError):
        load_config(_write(tmp_path, text))


def test_missing_file(tmp_path):
    with pytest.raises(ConfigError, match="not found"):
        load_config(tmp_path / "absent.toml")


def test_malformed_toml(tmp_path):
    with pytest.raises(ConfigError, match="Malformed"):
        load_config(_write(tmp_path, "[params\nm = 1\n"))
