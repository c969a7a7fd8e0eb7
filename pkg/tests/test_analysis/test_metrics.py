"""
Test suite for sample sets and error metrics
"""

import numpy as np
import pytest

from src.analysis.metrics import draw_samples, error_metrics, samples_for, target_values
from src.funcbuild.elementary import build_exponential
from src.topology.generators import named_tree
from src.utils.errors import ConfigError
from tests.conftest import random_network


def test_exact_network_has_no_error():
    tree = named_tree("comb", 2, 6)
    net = build_exponential(tree, 1.0, [1.0, -1.0])
    eps, eps_inf = error_metrics(net, lambda x: np.exp(x[:, 0] - x[:, 1]), samples_for(tree, 1000, 3))
    assert eps <= 1e-12
    assert eps_inf <= 1e-12


def test_mean_never_exceeds_max(rng):
    tree = named_tree("binary-tree", 2, 3)
    a = random_network(tree, 2, rng)
    b = random_network(tree, 2, rng)
    samples = samples_for(tree, 30, 1)
    eps, eps_inf = error_metrics(a, b, samples)
    assert 0.0 < eps <= eps_inf


def test_without_replacement_when_indexable():
    samples = draw_samples(2, 4, 256, seed=5)
    assert not samples.with_replacement
    assert len(np.unique(samples.grid, axis=0)) == 256
    assert samples.grid.min() >= 0 and samples.grid.max() < 16


def test_with_replacement_on_huge_grids():
    samples = draw_samples(4, 16, 100, seed=5)
    assert samples.with_replacement
    assert samples.grid.shape == (100, 4)


def test_same_seed_same_points():
    np.testing.assert_array_equal(draw_samples(3, 10, 50, 9).grid, draw_samples(3, 10, 50, 9).grid)
    assert not np.array_equal(draw_samples(3, 10, 50, 9).grid, draw_samples(3, 10, 50, 10).grid)


def test_points_reused_across_trees(rng):
    """Test one sample set evaluates the same function identically on two topologies"""
    samples = draw_samples(2, 5, 40, 2)
    a = build_exponential(named_tree("comb", 2, 5), 1.0, [0.5, 2.0])
    b = build_exponential(named_tree("path-interleaved", 2, 5), 1.0, [0.5, 2.0])
    np.testing.assert_allclose(target_values(a, samples), target_values(b, samples), rtol=1e-12)


def test_mismatched_tree_and_bad_count():
    with pytest.raises(ConfigError):
        draw_samples(2, 4, 10, 0).bits(named_tree("comb", 2, 5))
    with pytest.raises(ConfigError):
        draw_samples(2, 4, 0, 0)
