"""
Test suite for run configuration parsing and hashing
"""

import json

import pytest

from src.cli.config import RunConfig, build_run_config, load_config_document
from src.utils.errors import ConfigError


def test_defaults_and_chi_list_string():
    config = build_run_config(overrides={"command": "compress", "target": "laguerre", "seed": 1, "chi_list": "1,2,4"})
    assert config.L == 16
    assert config.chi_list == [1, 2, 4]
    assert config.tol == 1e-12
    assert str(config.out_dir) == "results"


def test_overrides_win_and_none_is_ignored():
    doc = {"command": "build", "target": "cosh", "L": 8}
    config = build_run_config(doc, {"L": 10, "tree": None})
    assert config.L == 10
    assert config.tree is None


@pytest.mark.parametrize(
    "fields",
    [
        {"command": "mi", "target": "cosh"},
        {"command": "build", "target": "cosh", "tree": "comb", "tree_spec": "t.json"},
        {"command": "build", "target": "cosh", "L": 0},
        {"command": "build", "target": "cosh", "L": 63},
        {"command": "build", "target": "cosh", "chi_list": [4, 0]},
        {"command": "build", "target": "cosh", "colour": "blue"},
        {"command": "fredholm", "target": "custom", "seed": 1},
        {"command": "render", "target": "cosh"},
    ],
)
def test_invalid_configs(fields):
    with pytest.raises(ConfigError):
        build_run_config(fields)


def test_missing_seed_message():
    with pytest.raises(ConfigError) as info:
        build_run_config({"command": "tci", "target": "cosh"})
    assert "seed" in str(info.value)


def test_hash_ignores_output_directory():
    """Test the same run written to two directories carries one hash"""
    a = build_run_config({"command": "mi", "target": "cosh", "seed": 3, "out": "a"})
    b = build_run_config({"command": "mi", "target": "cosh", "seed": 3, "out": "b"})
    c = build_run_config({"command": "mi", "target": "cosh", "seed": 4, "out": "a"})
    assert a.config_hash() == b.config_hash()
    assert a.config_hash() != c.config_hash()
    assert len(a.config_hash()) == 64


def test_custom_fredholm_section():
    config = RunConfig.model_validate(
        {
            "command": "fredholm",
            "target": "custom",
            "seed": 0,
            "fredholm": {"n_variables": 1, "kernel": "direct:constant:c=0.5", "source": "direct:constant:c=1"},
        }
    )
    assert config.fredholm.alpha == 1
    with pytest.raises(ConfigError):
        build_run_config(
            {
                "command": "fredholm",
                "target": "custom",
                "seed": 0,
                "fredholm": {"kernel": "constant:c=0.5", "source": "direct:constant:c=1"},
            }
        )


def test_load_config_document(tmp_path):
    path = tmp_path / "run.json"
    path.write_text(json.dumps({"command": "build", "target": "cosh"}), encoding="utf-8")
    assert load_config_document(path) == {"command": "build", "target": "cosh"}

    path.write_text("[1, 2]", encoding="utf-8")
    with pytest.raises(ConfigError):
        load_config_document(path)
    path.write_text("{not json", encoding="utf-8")
    with pytest.raises(ConfigError):
        load_config_document(path)
    with pytest.raises(ConfigError):
        load_config_document(tmp_path / "missing.json")


def test_tolerance_default_from_environment(monkeypatch, clean_settings):
    monkeypatch.setenv("TREETEN_DEFAULT_TOL", "1e-8")
    assert build_run_config({"command": "build", "target": "cosh"}).tol == 1e-8
    assert build_run_config({"command": "build", "target": "cosh", "tol": 0.0}).tol == 0.0
