"""
Pytest configuration and shared fixtures for TreeTen
"""

import sys
from pathlib import Path

import numpy as np
import pytest

# Add repo root to Python path for testing
repo_root = Path(__file__).parent.parent
sys.path.insert(0, str(repo_root))


@pytest.fixture
def rng():
    """Seeded generator so every test run draws the same numbers"""
    return np.random.default_rng(12345)


@pytest.fixture
def small_trees():
    """One tree per generator at n=2, L=3 (6 digits)"""
    from src.topology.generators import GENERATORS

    return {name: gen(2, 3) for name, gen in GENERATORS.items()}


@pytest.fixture
def clean_settings(monkeypatch, tmp_path):
    """Fresh settings with logs redirected into the test's tmp dir"""
    from src.utils.config import reset_settings

    monkeypatch.setenv("LOG_DIR", str(tmp_path / "logs"))
    reset_settings()
    yield
    reset_settings()


def random_network(tree, chi, rng, dtype=float):
    """Random network with every bond of dimension chi"""
    from src.ttn.network import TreeTensorNetwork, canonical_indices
    from src.tensor.dense import DenseTensor

    tensors = {}
    for v in tree.vertices:
        indices = canonical_indices(tree, v)
        shape = (2,) + (chi,) * (len(indices) - 1)
        data = rng.standard_normal(shape)
        if dtype is complex:
            data = data + 1j * rng.standard_normal(shape)
        tensors[v] = DenseTensor(indices, data)
    return TreeTensorNetwork(tree, tensors)


@pytest.fixture
def make_random_network(rng):
    return lambda tree, chi, dtype=float: random_network(tree, chi, rng, dtype)


# Pytest configuration
def pytest_configure(config):
    """Configure pytest with custom markers"""
    config.addinivalue_line(
        "markers", "slow: marks tests as slow (deselect with '-m \"not slow\"')"
    )
    config.addinivalue_line(
        "markers", "integration: marks tests as integration tests"
    )
    config.addinivalue_line(
        "markers", "unit: marks tests as unit tests"
    )


def pytest_collection_modifyitems(config, items):
    """Automatically mark tests based on their location"""
    for item in items:
        if "test_cli" in str(item.fspath) or "integration" in str(item.fspath):
            item.add_marker(pytest.mark.integration)
        else:
            item.add_marker(pytest.mark.unit)
