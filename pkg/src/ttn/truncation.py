"""
TreeTen - Bond-dimension truncation

The network is first brought into canonical form around the root (every
tensor isometric towards it), then the orthogonality centre walks the tree
depth first. Each downward step is a truncated SVD on the edge being crossed,
each upward step a QR that hands the centre back to the parent.
"""

from __future__ import annotations

import logging
from typing import Dict, Optional

from src.tensor.dense import DenseTensor, contract
from src.tensor.factorize import qr_split, svd_split
from src.topology.tree import DigitId
from src.ttn.network import TreeTensorNetwork, bond_index

logger = logging.getLogger(__name__)

_TMP = "__centre__"


def _shift(tensors: Dict[DigitId, DenseTensor], src: DigitId, dst: DigitId, chi_max: Optional[int], tol: float) -> float:
    """Move the orthogonality centre across edge (src, dst); returns discarded weight."""
    b = bond_index(src, dst)
    t = tensors[src]
    rows = [i for i in t.indices if i != b]
    if chi_max is None:
        f = qr_split(t, rows, bond=_TMP)
    else:
        f = svd_split(t, rows, chi_max=chi_max, tol=tol, bond=_TMP, absorb="right")
    tensors[src] = f.left.rename({_TMP: b})
    tensors[dst] = contract(f.right, tensors[dst]).rename({_TMP: b})
    return f.discarded_weight


def orthogonalize(net: TreeTensorNetwork, centre: Optional[DigitId] = None) -> TreeTensorNetwork:
    """Canonical form with every tensor except `centre` isometric towards it."""
    centre = centre or net.tree.root
    tensors = dict(net.tensors)
    order, parent = net.tree.traversal(centre)
    for v in reversed(order):
        p = parent[v]
        if p is not None:
            _shift(tensors, v, p, None, 0.0)
    return TreeTensorNetwork(net.tree, tensors)


def truncate(net: TreeTensorNetwork, chi_max: int, tol: float = 0.0) -> TreeTensorNetwork:
    """
    Cap every bond at chi_max and drop singular values whose tail weight is
    below tol (relative Frobenius norm per edge). Never increases a bond.
    """
    if chi_max < 1:
        raise ValueError("chi_max must be >= 1")
    tree = net.tree
    if not tree.edges:
        return net

    root = tree.root
    tensors = dict(orthogonalize(net, root).tensors)
    discarded = 0.0
    _, parent = tree.traversal(root)

    # downward moves truncate, upward moves only carry the centre back
    for a, b in tree.euler_tour(root):
        if parent[b] == a:
            discarded = max(discarded, _shift(tensors, a, b, chi_max, tol))
        else:
            _shift(tensors, a, b, None, 0.0)
    out = TreeTensorNetwork(tree, tensors)
    logger.debug(
        "truncate: chi %d -> %d (chi_max=%d, tol=%.1e, max discarded weight %.2e)",
        net.max_bond, out.max_bond, chi_max, tol, discarded,
    )
    return out
