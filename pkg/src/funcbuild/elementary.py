"""
TreeTen - Elementary functions as rank-1 (or rank-2) networks

constant     c
exponential  c * exp(k . x + a)
delta        2^(nL) on one grid point, 0 elsewhere (integrates to 1)
cosh / sinh  c * cosh(k . x + a), c * sinh(k . x + a)

Every digit (i, j) contributes the local factor exp(k_i * x_ij / 2^j), so the
product over digits reproduces exp(k . x) exactly on the grid.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, Literal, Optional, Sequence, Tuple, Union

import numpy as np

from src.topology.encoding import GridPoint
from src.topology.tree import DigitId, LabeledTree
from src.ttn.algebra import add
from src.ttn.network import TreeTensorNetwork, rank_one
from src.utils.errors import ConfigError, OffGridPoint
from src.utils.validation import is_finite_scalar

logger = logging.getLogger(__name__)

Number = Union[float, complex]
ElementaryKind = Literal["constant", "exponential", "delta", "cosh", "sinh"]


@dataclass(frozen=True)
class ElementarySpec:
    kind: ElementaryKind
    c: Number = 1.0
    a: Number = 0.0
    k: Tuple[Number, ...] = ()
    point: Optional[Tuple[float, ...]] = None

    def build(self, tree: LabeledTree) -> TreeTensorNetwork:
        if self.kind == "constant":
            return build_constant(tree, self.c)
        if self.kind == "exponential":
            return build_exponential(tree, self.c, self.k, self.a)
        if self.kind == "delta":
            if self.point is None:
                raise ConfigError("delta needs a point")
            return build_delta(tree, GridPoint.from_coordinates(tree, self.point, strict=True))
        if self.kind in ("cosh", "sinh"):
            return build_hyperbolic(tree, self.c, self.k, self.a, self.kind)
        raise ConfigError(f"unknown elementary kind {self.kind!r}")


def _check_finite(**params: object) -> None:
    for name, value in params.items():
        values = value if isinstance(value, (tuple, list, np.ndarray)) else (value,)
        if not all(is_finite_scalar(x) for x in values):
            raise ConfigError(f"parameter {name}={value!r} is not finite")


def _scalar_factors(tree: LabeledTree, c: Number) -> Dict[DigitId, Number]:
    """Split c over the vertices: c^(1/N) each, or all of c on the root when real c <= 0."""
    n = len(tree.vertices)
    if isinstance(c, complex) and c.imag != 0.0:
        root = complex(c) ** (1.0 / n)
        return {v: root for v in tree.vertices}
    c = float(np.real(c))
    if c > 0.0:
        root = c ** (1.0 / n)
        return {v: root for v in tree.vertices}
    factors: Dict[DigitId, Number] = {v: 1.0 for v in tree.vertices}
    factors[tree.root] = c
    return factors


def _wave_numbers(tree: LabeledTree, k: Union[Number, Sequence[Number]]) -> Dict[int, Number]:
    if np.isscalar(k):
        return {i: k for i in tree.variables}
    k = tuple(k)
    if len(k) == 1:
        return {i: k[0] for i in tree.variables}
    if len(k) != tree.n_variables:
        raise ConfigError(f"expected {tree.n_variables} wave numbers, got {len(k)}")
    return dict(zip(tree.variables, k))


def build_constant(tree: LabeledTree, c: Number) -> TreeTensorNetwork:
    _check_finite(c=c)
    scalars = _scalar_factors(tree, c)
    return rank_one(tree, {v: np.full(2, s) for v, s in scalars.items()})


def build_exponential(
    tree: LabeledTree,
    c: Number = 1.0,
    k: Union[Number, Sequence[Number]] = 1.0,
    a: Number = 0.0,
) -> TreeTensorNetwork:
    """c * exp(k . x + a); a is the total additive constant (a/N per digit)."""
    _check_finite(c=c, k=k, a=a)
    scalars = _scalar_factors(tree, c)
    ks = _wave_numbers(tree, k)
    share = a / len(tree.vertices)
    factors = {}
    for v in tree.vertices:
        step = ks[v.variable_index] * 2.0 ** (-v.digit_index)
        factors[v] = scalars[v] * np.exp(np.array([share, step + share]))
    return rank_one(tree, factors)


def build_delta(tree: LabeledTree, point: GridPoint) -> TreeTensorNetwork:
    point.validate(tree)
    bits = point.as_dict()
    factors = {}
    for v in tree.vertices:
        if bits[v] not in (0, 1):
            raise OffGridPoint(f"digit {v} has value {bits[v]}")
        vec = np.zeros(2)
        vec[bits[v]] = 2.0
        factors[v] = vec
    return rank_one(tree, factors)


def build_hyperbolic(
    tree: LabeledTree,
    c: Number = 1.0,
    k: Union[Number, Sequence[Number]] = 1.0,
    a: Number = 0.0,
    kind: Literal["cosh", "sinh"] = "cosh",
) -> TreeTensorNetwork:
    """(c/2) e^{k.x+a} +/- (c/2) e^{-(k.x+a)}; bond dimension 2 on every edge."""
    if kind not in ("cosh", "sinh"):
        raise ConfigError(f"kind must be cosh or sinh, got {kind!r}")
    ks = _wave_numbers(tree, k)
    minus_k = [-ks[i] for i in tree.variables]
    sign = 1.0 if kind == "cosh" else -1.0
    plus = build_exponential(tree, c / 2.0, [ks[i] for i in tree.variables], a)
    minus = build_exponential(tree, sign * c / 2.0, minus_k, -a)
    return add(plus, minus)
