"""
TreeTen - Polynomials p(x_i) = sum_k c_k x_i^k with bond dimension d + 1

Root the tree at a digit r of the target variable. Writing y_v = x_v / 2^j
for every target digit (0 for digits of other variables), each subtree sends
the powers (sum of its y)^alpha, alpha = 0..d, towards the root. A vertex
with parent bond beta and child bonds alpha_1..alpha_z therefore carries the
multinomial expansion

    T[x, alpha_1..alpha_z, beta] = beta! / (f! alpha_1! ... alpha_z!) * y^f,
    f = beta - sum(alpha)  (zero when f < 0),

and the root contracts the powers with the coefficients. On digits of other
variables y = 0, which leaves the delta(sum alpha, beta) pass-through pattern.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Tuple, Union

import numpy as np

from src.tensor.dense import DenseTensor
from src.topology.tree import DigitId, LabeledTree
from src.ttn.network import TreeTensorNetwork, bond_index, site_index
from src.utils.errors import ConfigError

logger = logging.getLogger(__name__)

Number = Union[float, complex]


@dataclass(frozen=True)
class PolynomialSpec:
    coefficients: Tuple[Number, ...]
    target_variable: int = 1
    root_digit: Optional[DigitId] = None

    def __post_init__(self) -> None:
        coefficients = tuple(self.coefficients)
        if not coefficients:
            raise ConfigError("a polynomial needs at least one coefficient")
        object.__setattr__(self, "coefficients", coefficients)
        root = self.root_digit or DigitId(self.target_variable, 1)
        if root.variable_index != self.target_variable:
            raise ConfigError(f"root digit {root} does not belong to variable {self.target_variable}")
        object.__setattr__(self, "root_digit", root)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def horner(self, x: np.ndarray) -> np.ndarray:
        """Reference evaluation."""
        out = np.zeros_like(np.asarray(x, dtype=np.result_type(float, *self.coefficients)))
        for c in reversed(self.coefficients):
            out = out * x + c
        return out


@lru_cache(maxsize=16)
def pascal(d: int) -> np.ndarray:
    """binom(n, k) for 0 <= n, k <= d as floats, built from exact integers."""
    table = [[0] * (d + 1) for _ in range(d + 1)]
    for n in range(d + 1):
        table[n][0] = 1
        for k in range(1, n + 1):
            table[n][k] = table[n - 1][k - 1] + table[n - 1][k]
    return np.array(table, dtype=np.float64)


def multinomial_block(d: int, n_children: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    Multinomial weights and remaining exponent f over (alpha_1..alpha_z, beta),
    each axis of length d + 1. Weights vanish where f < 0.
    """
    binom = pascal(d)
    axes = np.indices((d + 1,) * (n_children + 1))
    alphas, beta = axes[:-1], axes[-1]
    weight = np.ones(beta.shape)
    used = np.zeros(beta.shape, dtype=np.int64)
    for alpha in alphas:
        left = beta - used
        ok = left >= alpha
        weight = weight * np.where(ok, binom[np.clip(left, 0, d), alpha], 0.0)
        used = used + alpha
    f = beta - used
    weight = np.where(f >= 0, weight, 0.0)
    return weight, np.maximum(f, 0)


def _powers(y: float, f: np.ndarray) -> np.ndarray:
    if y == 0.0:
        return (f == 0).astype(np.float64)
    return np.power(y, f.astype(np.float64))


def build_polynomial(tree: LabeledTree, spec: PolynomialSpec) -> TreeTensorNetwork:
    d = spec.degree
    root = spec.root_digit
    if root not in tree:
        raise ConfigError(f"root digit {root} is not in the tree")
    coeffs = np.asarray(spec.coefficients)
    _, parent = tree.traversal(root)

    tensors = {}
    for v in tree.vertices:
        children = tree.children(v, parent[v])
        weight, f = multinomial_block(d, len(children))
        y1 = 2.0 ** (-v.digit_index) if v.variable_index == spec.target_variable else 0.0
        slices = []
        for y in (0.0, y1):
            block = weight * _powers(y, f)
            if parent[v] is None:
                block = np.tensordot(block, coeffs, axes=([block.ndim - 1], [0]))
            slices.append(block)
        data = np.stack(slices)
        indices = (site_index(v),) + tuple(bond_index(v, c) for c in children)
        if parent[v] is not None:
            indices += (bond_index(v, parent[v]),)
        tensors[v] = DenseTensor(indices, data)

    net = TreeTensorNetwork(tree, tensors)
    logger.debug("polynomial degree %d on %d digits, chi=%d", d, len(tree.vertices), net.max_bond)
    return net
