"""
Test suite for the exact polynomial construction
"""

import math

import numpy as np
import pytest

from src.funcbuild.polynomial import PolynomialSpec, build_polynomial, multinomial_block, pascal
from src.topology.encoding import all_bit_rows, bits_to_coordinates
from src.tensor.dense import contract
from src.topology.generators import named_tree
from src.topology.tree import DigitId, build_tree
from src.ttn.network import bond_index, evaluate_batch, site_index
from src.utils.errors import ConfigError

TOPOLOGIES = ["path-sequential", "star", "binary-tree", "comb", "bident"]


@pytest.mark.parametrize("d", [0, 1, 3, 5])
@pytest.mark.parametrize("name", TOPOLOGIES)
def test_polynomial_exactness(rng, d, name):
    """Test every grid point against Horner, relative error <= 1e-12"""
    tree = named_tree(name, 1, 8)
    spec = PolynomialSpec(tuple(rng.uniform(-1.0, 1.0, d + 1)))
    net = build_polynomial(tree, spec)
    rows = all_bit_rows(tree)
    x = bits_to_coordinates(tree, rows)[:, 0]
    exact = spec.horner(x)
    err = np.max(np.abs(evaluate_batch(net, rows) - exact))
    assert err <= 1e-12 * max(1.0, float(np.max(np.abs(exact))))


@pytest.mark.parametrize("d", [0, 2, 6])
@pytest.mark.parametrize("name", ["path-interleaved", "coupled-binary", "comb"])
def test_bond_dimension_is_degree_plus_one(d, name):
    """Test every edge carries exactly d + 1, including edges away from the target variable"""
    tree = named_tree(name, 2, 4)
    net = build_polynomial(tree, PolynomialSpec(tuple(range(1, d + 2)), target_variable=2))
    assert set(net.bond_dims.values()) == {d + 1}


def test_polynomial_in_second_variable():
    tree = named_tree("comb", 2, 4)
    spec = PolynomialSpec((0.5, -1.0, 2.0), target_variable=2)
    net = build_polynomial(tree, spec)
    rows = all_bit_rows(tree)
    x = bits_to_coordinates(tree, rows)
    np.testing.assert_allclose(evaluate_batch(net, rows), spec.horner(x[:, 1]), atol=1e-13)


def test_custom_root_digit():
    tree = named_tree("binary-tree", 1, 5)
    spec = PolynomialSpec((1.0, 0.0, 0.0, -3.0), root_digit=DigitId(1, 4))
    rows = all_bit_rows(tree)
    x = bits_to_coordinates(tree, rows)[:, 0]
    np.testing.assert_allclose(evaluate_batch(build_polynomial(tree, spec), rows), spec.horner(x), atol=1e-13)


def test_laguerre_bond_dimension():
    """Test degree 40 on a binary tree gives chi = 41"""
    coeffs = tuple(math.comb(40, k) * (-1) ** k / math.factorial(k) for k in range(41))
    net = build_polynomial(named_tree("binary-tree", 1, 16), PolynomialSpec(coeffs))
    assert net.max_bond == 41


def test_pascal_and_multinomial():
    assert pascal(4)[4].tolist() == [1, 4, 6, 4, 1]
    weight, f = multinomial_block(2, 1)
    # beta = 2, alpha = 1: binom(2, 1) with one power left
    assert weight[1, 2] == 2.0 and f[1, 2] == 1
    assert weight[2, 1] == 0.0


def test_spec_validation():
    with pytest.raises(ConfigError):
        PolynomialSpec(())
    with pytest.raises(ConfigError):
        PolynomialSpec((1.0,), target_variable=1, root_digit=DigitId(2, 1))
    with pytest.raises(ConfigError):
        build_polynomial(named_tree("comb", 1, 3), PolynomialSpec((1.0, 1.0), target_variable=2))


@pytest.mark.parametrize(
    "edges, leaf, parent",
    [
        ([("1.1", "1.2"), ("1.2", "1.3"), ("1.3", "1.4")], "1.4", "1.3"),
        ([("1.1", "1.2"), ("1.2", "1.3"), ("1.2", "1.4")], "1.4", "1.2"),
    ],
)
def test_leaf_absorption_sums_digits(edges, leaf, parent):
    """Test absorbing a leaf leaves the multinomial pattern in y_parent + y_leaf"""
    d = 3
    tree = build_tree(["1.1", "1.2", "1.3", "1.4"], edges)
    net = build_polynomial(tree, PolynomialSpec((1.0, -2.0, 0.5, 3.0), 1))
    leaf, parent = DigitId.parse(leaf), DigitId.parse(parent)
    merged = contract(net.tensors[parent], net.tensors[leaf])

    _, up = tree.traversal(DigitId(1, 1))
    siblings = [c for c in tree.children(parent, up[parent]) if c != leaf]
    order = (
        [site_index(parent), site_index(leaf)]
        + [bond_index(parent, c) for c in siblings]
        + [bond_index(parent, up[parent])]
    )
    data = merged.transpose(order).data
    weight, f = multinomial_block(d, len(siblings))
    for xp in (0, 1):
        for xl in (0, 1):
            y = xp * 2.0 ** -parent.digit_index + xl * 2.0 ** -leaf.digit_index
            np.testing.assert_allclose(data[xp, xl], weight * y**f, atol=1e-15)
