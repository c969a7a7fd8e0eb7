"""
TreeTen - Tree tensor networks

One DenseTensor per tree vertex. Canonical index layout of the tensor at v:
(site index of v, then one bond index per neighbour in sorted neighbour order).
Index ids are strings: "s<i.j>" for sites and "b<u>-<v>" (u < v) for bonds.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Mapping, Optional, Tuple, Union

import numpy as np

from src.tensor.dense import DenseTensor, contract
from src.topology.encoding import GridPoint, coordinates_to_bits
from src.topology.tree import DigitId, Edge, LabeledTree, edge_key
from src.utils.errors import DimensionMismatch, IncompleteGridPoint, NetworkError

logger = logging.getLogger(__name__)

BYTES_PER_SCALAR = 8

Scalar = Union[float, complex]


def site_index(v: DigitId) -> str:
    return f"s{v.label}"


def bond_index(u: DigitId, v: DigitId) -> str:
    a, b = edge_key(u, v)
    return f"b{a.label}-{b.label}"


def canonical_indices(tree: LabeledTree, v: DigitId) -> Tuple[str, ...]:
    return (site_index(v),) + tuple(bond_index(v, nb) for nb in tree.neighbors(v))


@dataclass(frozen=True)
class NetworkStats:
    max_bond: int
    per_edge_bonds: Dict[str, int]
    memory_bytes: int


@dataclass(frozen=True)
class TreeTensorNetwork:
    tree: LabeledTree
    tensors: Mapping[DigitId, DenseTensor]
    _bond_dims: Dict[Edge, int] = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        tensors: Dict[DigitId, DenseTensor] = {}
        if set(self.tensors) != set(self.tree.vertices):
            raise NetworkError("tensors must be given for exactly the tree's vertices")
        for v in self.tree.vertices:
            t = self.tensors[v]
            expected = canonical_indices(self.tree, v)
            if set(t.indices) != set(expected):
                raise DimensionMismatch(f"tensor at {v} has indices {t.indices}, expected {expected}")
            t = t.transpose(expected)
            if t.data.shape[0] != 2:
                raise DimensionMismatch(f"external index at {v} has dimension {t.data.shape[0]}, expected 2")
            tensors[v] = t

        bond_dims: Dict[Edge, int] = {}
        for u, v in self.tree.edges:
            b = bond_index(u, v)
            du, dv = tensors[u].dim(b), tensors[v].dim(b)
            if du != dv:
                raise DimensionMismatch(f"bond {b}: dimension {du} at {u} vs {dv} at {v}")
            bond_dims[(u, v)] = du

        object.__setattr__(self, "tensors", tensors)
        object.__setattr__(self, "_bond_dims", bond_dims)

    @property
    def bond_dims(self) -> Dict[Edge, int]:
        return dict(self._bond_dims)

    def bond_dim(self, u: DigitId, v: DigitId) -> int:
        return self._bond_dims[edge_key(u, v)]

    @property
    def max_bond(self) -> int:
        return max(self._bond_dims.values(), default=1)

    @property
    def dtype(self) -> np.dtype:
        return np.result_type(*(t.data for t in self.tensors.values()))

    @property
    def is_complex(self) -> bool:
        return np.issubdtype(self.dtype, np.complexfloating)

    def replace(self, updates: Mapping[DigitId, DenseTensor]) -> "TreeTensorNetwork":
        tensors = dict(self.tensors)
        tensors.update(updates)
        return TreeTensorNetwork(self.tree, tensors)

    def __call__(self, coords: np.ndarray) -> np.ndarray:
        """Target-function interface: values at (m, n) coordinates."""
        return evaluate_coordinates(self, coords)


# ---------- construction helpers ----------

def from_local(tree: LabeledTree, local: Callable[[DigitId], np.ndarray]) -> TreeTensorNetwork:
    """Network whose tensor at v is local(v), given in canonical layout."""
    return TreeTensorNetwork(
        tree, {v: DenseTensor(canonical_indices(tree, v), local(v)) for v in tree.vertices}
    )


def rank_one(tree: LabeledTree, factors: Mapping[DigitId, np.ndarray]) -> TreeTensorNetwork:
    """Product network: tensor at v is factors[v] (length 2) with dim-1 bonds."""
    def local(v: DigitId) -> np.ndarray:
        vec = np.asarray(factors[v])
        return vec.reshape((2,) + (1,) * tree.degree(v))

    return from_local(tree, local)


# ---------- evaluation ----------

EVAL_CHUNK_ENTRIES = 1 << 22


def _chunk_size(net: TreeTensorNetwork, parent: Mapping[DigitId, Optional[DigitId]]) -> int:
    """Samples per chunk so that no per-sample intermediate exceeds the entry cap."""
    tree = net.tree
    per_sample = 1
    for v in tree.vertices:
        child_dims = [net.bond_dim(v, c) for c in tree.children(v, parent[v])]
        per_sample = max(per_sample, (net.tensors[v].size // 2) // max(child_dims, default=1))
    return max(1, EVAL_CHUNK_ENTRIES // per_sample)


def _evaluate_rows(
    net: TreeTensorNetwork,
    order: List[DigitId],
    parent: Mapping[DigitId, Optional[DigitId]],
    bits: np.ndarray,
) -> np.ndarray:
    tree = net.tree
    messages: Dict[DigitId, np.ndarray] = {}
    for v in reversed(order):
        data = net.tensors[v].data
        site = bits[:, tree.position(v)].astype(np.intp)
        children = sorted(tree.children(v, parent[v]), key=lambda c: -messages[c].shape[1])
        if not children:
            messages[v] = data[site]
            continue
        neighbors = list(tree.neighbors(v))
        tail = () if parent[v] is None else (data.shape[1 + neighbors.index(parent[v])],)
        dtype = np.result_type(data, *(messages[c] for c in children))
        out = np.empty((len(site),) + tail, dtype=dtype)
        for s in (0, 1):
            rows = np.flatnonzero(site == s)
            if rows.size == 0:
                continue
            # widest child first: the tensordot output is the largest intermediate
            remaining = list(neighbors)
            first = children[0]
            acc = np.tensordot(messages[first][rows], data[s], axes=([1], [remaining.index(first)]))
            remaining.remove(first)
            for c in children[1:]:
                axis = remaining.index(c) + 1
                acc = np.einsum("m...k,mk->m...", np.moveaxis(acc, axis, -1), messages[c][rows])
                remaining.remove(c)
            out[rows] = acc
        for c in children:
            del messages[c]
        messages[v] = out
    return messages[tree.root]


def evaluate_batch(net: TreeTensorNetwork, bits: np.ndarray) -> np.ndarray:
    """Values at bit rows (m, n_vertices), contracting leaves to root in sample chunks."""
    tree = net.tree
    bits = np.atleast_2d(np.asarray(bits))
    if bits.shape[1] != len(tree.vertices):
        raise IncompleteGridPoint(f"bit rows have {bits.shape[1]} columns, tree has {len(tree.vertices)} digits")
    order, parent = tree.traversal(tree.root)
    if bits.shape[0] == 0:
        return np.zeros(0, dtype=net.dtype)
    chunk = _chunk_size(net, parent)
    parts = [_evaluate_rows(net, order, parent, bits[i : i + chunk]) for i in range(0, bits.shape[0], chunk)]
    return parts[0] if len(parts) == 1 else np.concatenate(parts)


def evaluate(net: TreeTensorNetwork, p: GridPoint) -> Scalar:
    return evaluate_batch(net, p.bit_row(net.tree)[None, :])[0].item()


def evaluate_coordinates(net: TreeTensorNetwork, coords: np.ndarray) -> np.ndarray:
    """Values at coordinates (m, n), columns ordered as tree.variables."""
    return evaluate_batch(net, coordinates_to_bits(net.tree, coords))


def to_dense(net: TreeTensorNetwork, max_vertices: int = 20) -> np.ndarray:
    """Full 2^(nL) tensor, axes ordered as tree.vertices. Small trees only."""
    tree = net.tree
    if len(tree.vertices) > max_vertices:
        raise NetworkError(f"refusing to contract {len(tree.vertices)} sites into a dense tensor")
    order, _ = tree.traversal(tree.root)
    acc: Optional[DenseTensor] = None
    for v in order:
        acc = net.tensors[v] if acc is None else contract(acc, net.tensors[v])
    return acc.transpose([site_index(v) for v in tree.vertices]).data


# ---------- statistics ----------

def stats(net: TreeTensorNetwork) -> NetworkStats:
    per_edge = {bond_index(u, v): d for (u, v), d in net.bond_dims.items()}
    scalars = sum(t.size for t in net.tensors.values())
    return NetworkStats(
        max_bond=net.max_bond,
        per_edge_bonds=per_edge,
        memory_bytes=BYTES_PER_SCALAR * scalars,
    )
