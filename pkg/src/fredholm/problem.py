"""
TreeTen - Fredholm problems of the second kind

    f(x) = g(x) + lam * integral K(x, t) f(t)^alpha dt

The kernel lives on the doubled tree: the x tree, a copy whose variables are
shifted by n (t_i is variable n + i), and one bridging edge between them.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, Mapping, Optional, Sequence, Tuple

import numpy as np

from src.topology.tree import DigitId, Edge, LabeledTree, VertexLike, edge_key
from src.ttn.algebra import relabel
from src.ttn.network import TreeTensorNetwork, bond_index, evaluate_coordinates
from src.utils.errors import ConfigError, LabelCollision, NetworkError

logger = logging.getLogger(__name__)


def remap_variables(net: TreeTensorNetwork, mapping: Mapping[int, int]) -> TreeTensorNetwork:
    """Rename variables i -> mapping[i] digit by digit; values are unchanged."""
    targets = list(mapping.values())
    if len(set(targets)) != len(targets):
        raise LabelCollision(f"variable map {dict(mapping)} is not injective")
    untouched = set(net.tree.variables) - set(mapping)
    clash = untouched & set(targets)
    if clash:
        raise LabelCollision(f"variables {sorted(clash)} would be mapped onto existing ones")
    digits = {
        v: DigitId(mapping[v.variable_index], v.digit_index)
        for v in net.tree.vertices
        if v.variable_index in mapping
    }
    return relabel(net, digits)


def shift_map(tree: LabeledTree) -> Dict[int, int]:
    """x_i -> t_i = variable i + n."""
    n = max(tree.variables)
    return {i: i + n for i in tree.variables}


def default_bridge(tx: LabeledTree) -> Tuple[DigitId, DigitId]:
    """Most significant digit of the first variable on each side."""
    root = DigitId(tx.variables[0], 1)
    return root, DigitId(shift_map(tx)[root.variable_index], 1)


def build_doubled_tree(
    tx: LabeledTree,
    bridge: Optional[Tuple[VertexLike, VertexLike]] = None,
    extra_bridges: Sequence[Tuple[VertexLike, VertexLike]] = (),
) -> LabeledTree:
    """x tree, its t copy and the bridge edge(s); a second bridge closes a cycle."""
    tt = tx.relabel({v: DigitId(shift_map(tx)[v.variable_index], v.digit_index) for v in tx.vertices})
    bridges = [bridge or default_bridge(tx)] + list(extra_bridges)
    doubled = tx.union(tt, bridges)
    logger.debug(f"doubled tree: {len(doubled.vertices)} digits, bridge {bridges[0]}")
    return doubled


def find_bridge(kernel_tree: LabeledTree, tx: LabeledTree) -> Edge:
    own = set(tx.vertices)
    crossing = [(u, v) for u, v in kernel_tree.edges if (u in own) != (v in own)]
    if len(crossing) != 1:
        raise NetworkError(f"kernel tree has {len(crossing)} bridging edges, expected exactly one")
    u, v = crossing[0]
    return (u, v) if u in own else (v, u)


def split_at_bridge(kernel: TreeTensorNetwork, tx: LabeledTree, value: int) -> Tuple[TreeTensorNetwork, TreeTensorNetwork]:
    """u_i(x) and v_i(t): the two halves of the kernel with the bridge bond fixed to `value`."""
    x_end, t_end = find_bridge(kernel.tree, tx)
    bond = bond_index(x_end, t_end)
    own = set(tx.vertices)
    x_tensors, t_tensors = {}, {}
    for v, t in kernel.tensors.items():
        if v in (x_end, t_end):
            t = t.slice(bond, value)
        (x_tensors if v in own else t_tensors)[v] = t
    x_tree = LabeledTree(tuple(sorted(own)), tuple(e for e in kernel.tree.edges if e[0] in own and e[1] in own))
    t_vertices = tuple(v for v in kernel.tree.vertices if v not in own)
    t_tree = LabeledTree(t_vertices, tuple(e for e in kernel.tree.edges if e[0] not in own and e[1] not in own))
    return TreeTensorNetwork(x_tree, x_tensors), TreeTensorNetwork(t_tree, t_tensors)


@dataclass(frozen=True)
class FredholmProblem:
    g_net: TreeTensorNetwork
    kernel_net: TreeTensorNetwork
    alpha: int = 1
    lam: float = 1.0
    n_iters: int = 20
    chi_max: Optional[int] = None
    tol: float = 1e-12
    power_tol: float = 1e-14

    def __post_init__(self) -> None:
        if self.alpha < 1:
            raise ConfigError(f"alpha must be a positive integer, got {self.alpha}")
        if self.n_iters < 1:
            raise ConfigError("n_iters must be >= 1")
        if self.chi_max is not None and self.chi_max < 1:
            raise ConfigError("chi_max must be >= 1")
        tx = self.g_net.tree
        mapping = shift_map(tx)
        copy = tx.relabel({v: DigitId(mapping[v.variable_index], v.digit_index) for v in tx.vertices})
        kt = self.kernel_net.tree
        if set(kt.vertices) != set(tx.vertices) | set(copy.vertices):
            raise NetworkError("kernel digits must be the x digits plus their t copies")
        x_end, t_end = find_bridge(kt, tx)
        expected = set(tx.edges) | set(copy.edges) | {edge_key(x_end, t_end)}
        if set(kt.edges) != expected:
            raise NetworkError("kernel tree is not the x tree, its t copy and one bridge")

    @property
    def x_tree(self) -> LabeledTree:
        return self.g_net.tree

    @property
    def x_to_t(self) -> Dict[int, int]:
        return shift_map(self.x_tree)

    @property
    def t_variables(self) -> Tuple[int, ...]:
        return tuple(self.x_to_t.values())

    @property
    def bridge(self) -> Edge:
        return find_bridge(self.kernel_net.tree, self.x_tree)

    def rank_bound(self) -> Dict[Edge, int]:
        """Per x edge: bond of g plus bond of the kernel on that edge."""
        g_dims = self.g_net.bond_dims
        k_dims = self.kernel_net.bond_dims
        return {e: g_dims[e] + k_dims[e] for e in self.x_tree.edges}


def kernel_values(kernel: TreeTensorNetwork, x: np.ndarray, t: np.ndarray) -> np.ndarray:
    """K at paired coordinates; x and t are (m, n) each."""
    return evaluate_coordinates(kernel, np.hstack([np.atleast_2d(x), np.atleast_2d(t)]))
