"""
TreeTen - Network algebra

Sums use per-vertex direct sums (bond dims add), products use per-vertex
outer products fused over bonds (bond dims multiply). Both operands must live
on the same labelled tree.
"""

from __future__ import annotations

import logging
from typing import Dict, Optional

import numpy as np

from src.tensor.dense import DenseTensor, direct_sum, outer_fuse
from src.topology.tree import DigitId, LabeledTree
from src.ttn.network import (
    TreeTensorNetwork,
    bond_index,
    canonical_indices,
    rank_one,
    site_index,
)
from src.utils.errors import LabelCollision, NetworkError, TreeMismatch

logger = logging.getLogger(__name__)


def _require_same_tree(a: TreeTensorNetwork, b: TreeTensorNetwork) -> None:
    if a.tree != b.tree:
        raise TreeMismatch("operands live on different labelled trees")


def zero_network(tree: LabeledTree, dtype=np.float64) -> TreeTensorNetwork:
    """Rank-1 network with a zero tensor at the root."""
    factors = {v: np.ones(2, dtype=dtype) for v in tree.vertices}
    factors[tree.root] = np.zeros(2, dtype=dtype)
    return rank_one(tree, factors)


def add(a: TreeTensorNetwork, b: TreeTensorNetwork) -> TreeTensorNetwork:
    _require_same_tree(a, b)
    tensors: Dict[DigitId, DenseTensor] = {}
    for v in a.tree.vertices:
        ta, tb = a.tensors[v], b.tensors[v]
        if a.tree.degree(v) == 0:
            tensors[v] = DenseTensor(ta.indices, ta.data + tb.data)
        else:
            tensors[v] = direct_sum(ta, tb, shared=(site_index(v),))
    out = TreeTensorNetwork(a.tree, tensors)
    logger.debug("add: chi %d + %d -> %d", a.max_bond, b.max_bond, out.max_bond)
    return out


def multiply(a: TreeTensorNetwork, b: TreeTensorNetwork) -> TreeTensorNetwork:
    _require_same_tree(a, b)
    tensors: Dict[DigitId, DenseTensor] = {}
    for v in a.tree.vertices:
        bonds = canonical_indices(a.tree, v)[1:]
        primed = {i: f"{i}'" for i in bonds}
        tb = b.tensors[v].rename(primed)
        tensors[v] = outer_fuse(
            a.tensors[v],
            tb,
            shared=(site_index(v),),
            fuse_pairs=[(i, primed[i]) for i in bonds],
        )
    out = TreeTensorNetwork(a.tree, tensors)
    logger.debug("multiply: chi %d * %d -> %d", a.max_bond, b.max_bond, out.max_bond)
    return out


def scale(net: TreeTensorNetwork, c: complex, at: Optional[DigitId] = None) -> TreeTensorNetwork:
    v = at or net.tree.root
    return net.replace({v: net.tensors[v].scaled(c)})


def conjugate(net: TreeTensorNetwork) -> TreeTensorNetwork:
    return TreeTensorNetwork(net.tree, {v: t.conj() for v, t in net.tensors.items()})


def real_part(net: TreeTensorNetwork) -> TreeTensorNetwork:
    """Re g as a real network; bond dims double."""
    if not net.is_complex:
        return net
    return _component(net, 0)


def imag_part(net: TreeTensorNetwork) -> TreeTensorNetwork:
    """Im g as a real network; bond dims double."""
    if not net.is_complex:
        return zero_network(net.tree)
    return _component(net, 1)


def _component(net: TreeTensorNetwork, part: int) -> TreeTensorNetwork:
    """
    Each bond alpha becomes (alpha, r) with r in {re, im} of the message sent
    towards the root. A vertex multiplies its entry by i^r for every incoming
    child component and emits the (re, im) split on its parent bond; the root
    keeps only the requested part.
    """
    tree = net.tree
    _, parent = tree.traversal(tree.root)
    unit = np.array([1.0, 1.0j])
    tensors: Dict[DigitId, DenseTensor] = {}
    for v in tree.vertices:
        t = net.tensors[v]
        neighbours = tree.neighbors(v)
        k = len(neighbours)
        # (site, d1, 1, d2, 1, ...): a component axis after every bond
        z = t.data.reshape((2,) + sum(((d, 1) for d in t.data.shape[1:]), ())).astype(complex)
        parent_axis = None
        for pos, nb in enumerate(neighbours):
            r_axis = 2 + 2 * pos
            if nb == parent[v]:
                parent_axis = r_axis
                continue
            shape = [1] * (1 + 2 * k)
            shape[r_axis] = 2
            z = z * unit.reshape(shape)
        if parent_axis is None:
            data = z.real if part == 0 else z.imag
        else:
            data = np.concatenate([z.real, z.imag], axis=parent_axis)
        fused = (2,) + tuple(2 * d for d in t.data.shape[1:])
        tensors[v] = DenseTensor(t.indices, np.ascontiguousarray(data).reshape(fused))
    return TreeTensorNetwork(tree, tensors)


def embed(net: TreeTensorNetwork, supertree: LabeledTree) -> TreeTensorNetwork:
    """
    Lift net onto a tree that contains it as a connected subtree. New vertices
    carry the constant 1; new bonds have dimension 1. The result evaluates to
    net's function of the original variables.
    """
    own = set(net.tree.vertices)
    if not own.issubset(supertree.vertices):
        raise NetworkError("supertree does not contain every vertex of the network")
    for u, v in net.tree.edges:
        if not supertree.has_edge(u, v):
            raise NetworkError(f"supertree lacks edge ({u}, {v})")
    for u, v in supertree.edges:
        if u in own and v in own and not net.tree.has_edge(u, v):
            raise LabelCollision(f"supertree adds edge ({u}, {v}) inside the embedded tree")

    tensors: Dict[DigitId, DenseTensor] = {}
    for v in supertree.vertices:
        idx = canonical_indices(supertree, v)
        if v in own:
            t = net.tensors[v]
            extra = [i for i in idx if i not in t.indices]
            data = t.data.reshape(t.data.shape + (1,) * len(extra))
            tensors[v] = DenseTensor(t.indices + tuple(extra), data)
        else:
            tensors[v] = DenseTensor(idx, np.ones((2,) + (1,) * supertree.degree(v), dtype=net.dtype))
    return TreeTensorNetwork(supertree, tensors)


def relabel(net: TreeTensorNetwork, mapping: Dict[DigitId, DigitId]) -> TreeTensorNetwork:
    """Rename vertices (and with them every site and bond index)."""
    tree = net.tree.relabel(mapping)
    m = lambda v: mapping.get(v, v)  # noqa: E731
    tensors: Dict[DigitId, DenseTensor] = {}
    for v in net.tree.vertices:
        names = {site_index(v): site_index(m(v))}
        names.update({bond_index(v, nb): bond_index(m(v), m(nb)) for nb in net.tree.neighbors(v)})
        tensors[m(v)] = net.tensors[v].rename(names)
    return TreeTensorNetwork(tree, tensors)
