"""
Test suite for target and tree resolution
"""

import json

import pytest

from src.cli.config import build_run_config
from src.cli.targets import is_expression, require_network, resolve_function, resolve_target, resolve_tree
from src.utils.errors import ConfigError


def _config(**fields):
    base = {"command": "build", "L": 6}
    base.update(fields)
    return build_run_config(base)


def test_expression_detection():
    assert is_expression("direct:constant:c=1")
    assert is_expression("polynomial:coeffs=1;2")
    assert not is_expression("laguerre")
    assert not is_expression("tci:cosh")


def test_benchmark_name_wins_over_builder_kind():
    """Test a bare cosh is the benchmark while parameters or direct: pick the builder"""
    assert not is_expression("cosh")
    assert is_expression("cosh:k=2")
    assert is_expression("direct:cosh:k=1")
    resolved = resolve_target(_config(target="cosh"))
    assert resolved.name == "cosh"
    assert "expression" not in resolved.metadata


def test_expression_target_on_named_tree():
    resolved = resolve_target(_config(target="direct:exponential:k=1;2", n=2, tree="comb"))
    assert resolved.tree.n_variables == 2
    assert resolved.exact is not None and resolved.exact.max_bond == 1
    assert resolved.metadata["expression"] == "exponential:k=1;2"


def test_benchmark_defaults_and_learning():
    exact = resolve_target(_config(target="cosh"))
    assert exact.exact.max_bond == 2 and not exact.learned
    learned = resolve_target(_config(target="tci:cosh", chi_list=[2], sweeps=3))
    assert learned.learned
    assert learned.metadata["tci_chi"] == 2
    assert learned.exact.max_bond <= 2


def test_variable_count_mismatch():
    with pytest.raises(ConfigError):
        resolve_target(_config(target="cosh", n=2))


def test_missing_construction():
    resolved = resolve_target(_config(target="multinormal"), with_exact=True)
    with pytest.raises(ConfigError):
        require_network(resolved, "compress")


def test_tree_spec_resolution(tmp_path):
    spec = tmp_path / "tree.json"
    spec.write_text(json.dumps({"vertices": ["1.1", "1.2"], "edges": [["1.1", "1.2"]]}), encoding="utf-8")
    tree = resolve_tree(_config(target="cosh", tree_spec=str(spec)), 1)
    assert len(tree.vertices) == 2
    with pytest.raises(ConfigError):
        resolve_tree(_config(target="cosh", tree_spec=str(spec)), 2)
    with pytest.raises(ConfigError):
        resolve_tree(_config(target="cosh", tree_spec=str(tmp_path / "missing.json")), 1)


def test_function_ids():
    assert resolve_function("fredholm-ex2-kernel") is not None
    assert resolve_function("cosh") is not None
    with pytest.raises(ConfigError):
        resolve_function("nothing")
