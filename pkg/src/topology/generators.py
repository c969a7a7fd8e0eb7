"""
TreeTen - Canonical tree generators

All generators take (n, L) and place digit (i, j) with j = 1 the most
significant digit of variable i.
"""

from __future__ import annotations

from typing import Callable, Dict, List, Tuple

from src.topology.tree import DigitId, LabeledTree, build_tree
from src.utils.errors import ConfigError


def _digits_sequential(n: int, L: int) -> List[DigitId]:
    return [DigitId(i, j) for i in range(1, n + 1) for j in range(1, L + 1)]


def _digits_interleaved(n: int, L: int) -> List[DigitId]:
    return [DigitId(i, j) for j in range(1, L + 1) for i in range(1, n + 1)]


def _path(order: List[DigitId]) -> LabeledTree:
    return build_tree(order, list(zip(order[:-1], order[1:])))


def _heap(order: List[DigitId]) -> List[Tuple[DigitId, DigitId]]:
    # order[0] is the root; order[k] hangs below order[(k - 1) // 2]
    return [(order[(k - 1) // 2], order[k]) for k in range(1, len(order))]


def path_sequential(n: int, L: int) -> LabeledTree:
    """Tensor train with all digits of x_1 first, then x_2, ..."""
    return _path(_digits_sequential(n, L))


def path_interleaved(n: int, L: int) -> LabeledTree:
    """Tensor train alternating variables digit by digit."""
    return _path(_digits_interleaved(n, L))


def binary_tree(n: int, L: int) -> LabeledTree:
    """Single binary tree, more significant digits nearer the root."""
    order = _digits_interleaved(n, L)
    return build_tree(order, _heap(order))


def comb(n: int, L: int) -> LabeledTree:
    """One path per variable, joined along a spine of most significant digits."""
    spine = [(DigitId(i, 1), DigitId(i + 1, 1)) for i in range(1, n)]
    teeth = [(DigitId(i, j), DigitId(i, j + 1)) for i in range(1, n + 1) for j in range(1, L)]
    return build_tree(_digits_sequential(n, L), spine + teeth)


def coupled_binary(n: int, L: int) -> LabeledTree:
    """One binary tree per variable, roots (i, 1) coupled along a path."""
    edges = [(DigitId(i, 1), DigitId(i + 1, 1)) for i in range(1, n)]
    for i in range(1, n + 1):
        edges.extend(_heap([DigitId(i, j) for j in range(1, L + 1)]))
    return build_tree(_digits_sequential(n, L), edges)


def _bident(i: int, L: int) -> Tuple[DigitId, List[Tuple[DigitId, DigitId]]]:
    hub = (L + 2) // 3
    split = hub + (L - hub + 1) // 2
    prongs = [
        list(range(hub, 0, -1)),
        [hub] + list(range(hub + 1, split + 1)),
        [hub] + list(range(split + 1, L + 1)),
    ]
    edges = [(DigitId(i, a), DigitId(i, b)) for prong in prongs for a, b in zip(prong[:-1], prong[1:])]
    return DigitId(i, hub), edges


def bident(n: int, L: int) -> LabeledTree:
    """
    Three prongs per variable meeting at a hub digit, with the most significant
    digit at the far end of one prong. Hubs of neighbouring variables are joined.
    """
    hubs, edges = [], []
    for i in range(1, n + 1):
        hub, own = _bident(i, L)
        hubs.append(hub)
        edges.extend(own)
    edges.extend(zip(hubs[:-1], hubs[1:]))
    return build_tree(_digits_sequential(n, L), edges)


def star(n: int, L: int) -> LabeledTree:
    """Every digit attached to (1, 1)."""
    centre = DigitId(1, 1)
    leaves = [v for v in _digits_sequential(n, L) if v != centre]
    return build_tree([centre] + leaves, [(centre, v) for v in leaves])


GENERATORS: Dict[str, Callable[[int, int], LabeledTree]] = {
    "path-sequential": path_sequential,
    "path-interleaved": path_interleaved,
    "binary-tree": binary_tree,
    "comb": comb,
    "coupled-binary": coupled_binary,
    "star": star,
    "bident": bident,
}


def named_tree(name: str, n: int, L: int) -> LabeledTree:
    if n < 1 or L < 1:
        raise ConfigError(f"tree generators need n >= 1 and L >= 1, got n={n}, L={L}")
    try:
        generator = GENERATORS[name]
    except KeyError:
        raise ConfigError(f"unknown tree '{name}', expected one of {sorted(GENERATORS)}") from None
    return generator(n, L)
