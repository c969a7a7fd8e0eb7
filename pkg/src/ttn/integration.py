"""
TreeTen - Integration over variables

Each digit of an integrated variable is summed with weight 1/2, which gives
the left-endpoint Riemann sum on the 2^L grid. The resulting site-less
tensors are then absorbed into neighbours until only kept digits remain.
"""

from __future__ import annotations

import logging
from typing import Dict, Iterable, Set, Union

import numpy as np

from src.tensor.dense import DenseTensor, contract
from src.topology.tree import DigitId, LabeledTree, edge_key
from src.ttn.network import Scalar, TreeTensorNetwork, bond_index, site_index
from src.utils.errors import NetworkError

logger = logging.getLogger(__name__)

_HALF = np.array([0.5, 0.5])


def partial_integrate(
    net: TreeTensorNetwork, variables: Iterable[int]
) -> Union[TreeTensorNetwork, Scalar]:
    """Integrate the given variables over [0, 1); a scalar when none remain."""
    targets: Set[int] = set(variables)
    unknown = targets - set(net.tree.variables)
    if unknown:
        raise NetworkError(f"cannot integrate unknown variables {sorted(unknown)}")
    if not targets:
        return net

    keep = {v for v in net.tree.vertices if v.variable_index not in targets}
    tensors: Dict[DigitId, DenseTensor] = dict(net.tensors)
    adjacency: Dict[DigitId, Set[DigitId]] = {v: set(net.tree.neighbors(v)) for v in net.tree.vertices}
    for v in net.tree.vertices:
        if v not in keep:
            tensors[v] = contract(tensors[v], DenseTensor((site_index(v),), _HALF))

    pending = set(net.tree.vertices) - keep
    while pending:
        # leaves first, so no absorbed tensor grows more bonds than needed
        w = min(pending, key=lambda v: (len(adjacency[v]), v))
        if not adjacency[w]:
            break
        nbs = sorted(adjacency[w])
        kept_nbs = [u for u in nbs if u in keep]
        u = kept_nbs[0] if kept_nbs else nbs[0]

        merged = contract(tensors[w], tensors[u])
        others = adjacency[w] - {u}
        merged = merged.rename({bond_index(w, k): bond_index(u, k) for k in others})
        tensors[u] = merged
        for k in others:
            tensors[k] = tensors[k].rename({bond_index(w, k): bond_index(u, k)})
            adjacency[k].discard(w)
            adjacency[k].add(u)
            adjacency[u].add(k)
        adjacency[u].discard(w)
        del adjacency[w], tensors[w]
        pending.discard(w)

    if not keep:
        (last,) = tensors.values()
        value = last.data.item()
        logger.debug("integrated all %d variables -> %r", len(targets), value)
        return value

    edges = sorted({edge_key(u, k) for u in keep for k in adjacency[u]})
    tree = LabeledTree(tuple(sorted(keep)), tuple(edges))
    return TreeTensorNetwork(tree, {v: tensors[v] for v in keep})


def integrate(net: TreeTensorNetwork) -> Scalar:
    """Integral over the whole unit cube."""
    return partial_integrate(net, net.tree.variables)
