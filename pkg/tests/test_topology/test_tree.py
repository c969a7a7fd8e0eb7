"""
Test suite for labelled trees, generators and tree spec documents
"""

import json

import pytest

from src.topology.generators import GENERATORS, bident, comb, coupled_binary, named_tree, star
from src.topology.spec_io import dump_tree_spec, parse_tree_spec
from src.topology.tree import DigitId, LabeledTree, build_tree
from src.utils.errors import (
    ConfigError,
    CycleDetected,
    DisconnectedTree,
    DuplicateDigit,
    MissingDigit,
)


@pytest.mark.parametrize("name", sorted(GENERATORS))
def test_generators_are_trees(name):
    """Test every generator yields nL digits and nL - 1 edges"""
    tree = named_tree(name, 3, 4)
    assert len(tree.vertices) == 12
    assert len(tree.edges) == 11
    assert tree.variables == (1, 2, 3)
    assert tree.digits_per_variable == 4
    assert tree.root == DigitId(1, 1)


def test_comb_spine_and_teeth():
    """Test comb joins the most significant digits along a spine"""
    tree = comb(3, 3)
    assert tree.has_edge(DigitId(1, 1), DigitId(2, 1))
    assert tree.has_edge(DigitId(2, 1), DigitId(3, 1))
    assert tree.has_edge(DigitId(2, 2), DigitId(2, 3))
    assert tree.degree(DigitId(2, 1)) == 3


def test_coupled_binary_roots():
    tree = coupled_binary(2, 7)
    assert tree.has_edge(DigitId(1, 1), DigitId(2, 1))
    assert tree.neighbors(DigitId(1, 2)) == (DigitId(1, 1), DigitId(1, 4), DigitId(1, 5))


def test_star_degree():
    tree = star(2, 3)
    assert tree.degree(DigitId(1, 1)) == 5
    assert all(tree.is_leaf(v) for v in tree.vertices if v != DigitId(1, 1))


def test_bident_prongs():
    """Test the three prongs meet at the hub with the leading digit on a prong end"""
    tree = bident(1, 16)
    hub = DigitId(1, 6)
    assert tree.degree(hub) == 3
    assert tree.neighbors(hub) == (DigitId(1, 5), DigitId(1, 7), DigitId(1, 12))
    assert tree.is_leaf(DigitId(1, 1))
    assert sorted(v.digit_index for v in tree.vertices if tree.is_leaf(v)) == [1, 11, 16]
    assert tree.max_degree == 3

    coupled = bident(2, 4)
    assert coupled.has_edge(DigitId(1, 2), DigitId(2, 2))
    assert coupled.degree(DigitId(2, 2)) == 4


def test_cycle_detected():
    """Test a closed loop is rejected"""
    with pytest.raises(CycleDetected):
        build_tree(["1.1", "1.2", "1.3"], [("1.1", "1.2"), ("1.2", "1.3"), ("1.3", "1.1")])


def test_disconnected_tree():
    with pytest.raises(DisconnectedTree):
        build_tree(["1.1", "1.2", "2.1", "2.2"], [("1.1", "1.2"), ("2.1", "2.2")])


def test_duplicate_digit():
    with pytest.raises(DuplicateDigit):
        LabeledTree((DigitId(1, 1), DigitId(1, 1)), ())


def test_missing_digit():
    """Test digit gaps and unequal digit counts are rejected"""
    with pytest.raises(MissingDigit):
        build_tree(["1.1", "1.3"], [("1.1", "1.3")])
    with pytest.raises(MissingDigit):
        build_tree(["1.1", "1.2", "2.1"], [("1.1", "1.2"), ("1.1", "2.1")])


def test_single_vertex_tree():
    tree = build_tree(["1.1"], [])
    assert tree.edges == ()
    assert tree.euler_tour() == []


def test_euler_tour_and_subtrees():
    """Test the tour crosses every edge twice and returns to the root"""
    tree = named_tree("binary-tree", 2, 3)
    tour = tree.euler_tour()
    assert len(tour) == 2 * len(tree.edges)
    assert tour[0][0] == tree.root and tour[-1][1] == tree.root
    for (a, b), (c, _) in zip(tour, tour[1:]):
        assert b == c
    for u, v in tree.edges:
        left, right = tree.subtree(u, v), tree.subtree(v, u)
        assert set(left) | set(right) == set(tree.vertices)
        assert not set(left) & set(right)


def test_euler_tour_on_long_path():
    """Test a path of 5000 digits is toured without hitting the recursion limit"""
    tree = named_tree("path-sequential", 1, 5000)
    tour = tree.euler_tour()
    assert len(tour) == 2 * 4999
    assert tour[4998] == (DigitId(1, 4999), DigitId(1, 5000))
    assert tree.dfs_edges()[-1] == (DigitId(1, 4999), DigitId(1, 5000))


def test_union_with_bridge():
    a = named_tree("path-sequential", 1, 3)
    b = a.relabel({v: DigitId(2, v.digit_index) for v in a.vertices})
    joined = a.union(b, [("1.1", "2.1")])
    assert len(joined.vertices) == 6
    with pytest.raises(CycleDetected):
        a.union(b, [("1.1", "2.1"), ("1.3", "2.3")])


def test_spec_document_round_trip():
    tree = named_tree("comb", 2, 3)
    assert parse_tree_spec(dump_tree_spec(tree)) == tree


def test_spec_document_errors():
    """Test malformed labels and cycles in spec documents"""
    with pytest.raises(ConfigError):
        parse_tree_spec(json.dumps({"vertices": ["1.x"], "edges": []}))
    cyclic = {"vertices": ["1.1", "1.2", "1.3"], "edges": [["1.1", "1.2"], ["1.2", "1.3"], ["1.1", "1.3"]]}
    with pytest.raises(CycleDetected):
        parse_tree_spec(json.dumps(cyclic))


def test_unknown_generator():
    with pytest.raises(ConfigError):
        named_tree("ring", 1, 4)
    with pytest.raises(ConfigError):
        named_tree("comb", 0, 4)
