"""
Test suite for network persistence
"""

import json

import numpy as np
import pytest

from src.topology.encoding import all_bit_rows
from src.topology.generators import named_tree
from src.ttn.network import evaluate_batch
from src.ttn.storage import load_network, save_network
from src.utils.errors import ConfigError
from tests.conftest import random_network


def test_save_and_load(tmp_path, rng):
    """Test a complex network survives the container with its tree and layout"""
    net = random_network(named_tree("coupled-binary", 2, 3), 2, rng, complex)
    path = save_network(net, tmp_path / "nets" / "a.npz")
    assert path.exists()
    back = load_network(path)
    assert back.tree == net.tree
    assert back.bond_dims == net.bond_dims
    rows = all_bit_rows(net.tree)
    np.testing.assert_array_equal(evaluate_batch(back, rows), evaluate_batch(net, rows))


def test_load_rejects_foreign_archive(tmp_path):
    path = tmp_path / "other.npz"
    np.savez_compressed(path, header=np.array(json.dumps({"format": "something-else", "version": 1})))
    with pytest.raises(ConfigError):
        load_network(path)
