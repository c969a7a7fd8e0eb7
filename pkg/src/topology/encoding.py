"""
TreeTen - Binary encoding of grid coordinates

x = sum_j x_j / 2^j with x_1 the most significant digit. The 2^L grid values
cover [0, 1 - 2^-L]; encode truncates onto the grid.

Array helpers work on batches: coordinates are (m, n) with columns ordered as
tree.variables, bit arrays are (m, n_vertices) with columns ordered as
tree.vertices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence, Tuple

import numpy as np

from src.topology.tree import DigitId, LabeledTree
from src.utils.errors import IncompleteGridPoint, OffGridPoint, OutOfDomain


def encode(x: float, L: int) -> Tuple[int, ...]:
    """Digits (x_1..x_L) of the largest grid value <= x."""
    if L < 1:
        raise OutOfDomain(f"L must be >= 1, got {L}")
    if not (0.0 <= x < 1.0):
        raise OutOfDomain(f"x={x!r} outside [0, 1)")
    m = int(math.floor(math.ldexp(x, L)))
    return tuple((m >> (L - j)) & 1 for j in range(1, L + 1))


def decode(bits: Sequence[int]) -> float:
    m = 0
    for b in bits:
        m = (m << 1) | (int(b) & 1)
    return math.ldexp(m, -len(bits))


def grid_spacing(L: int) -> float:
    return math.ldexp(1.0, -L)


@dataclass(frozen=True)
class GridPoint:
    """Full assignment of every digit of a tree."""

    bits: Tuple[Tuple[DigitId, int], ...]

    @classmethod
    def from_mapping(cls, bits: Mapping[DigitId, int]) -> "GridPoint":
        for v, b in bits.items():
            if b not in (0, 1):
                raise OffGridPoint(f"digit {v} has value {b}, expected 0 or 1")
        return cls(tuple(sorted((DigitId.parse(v), int(b)) for v, b in bits.items())))

    @classmethod
    def from_coordinates(cls, tree: LabeledTree, coords: Sequence[float], strict: bool = False) -> "GridPoint":
        """Point for coordinates ordered as tree.variables; strict rejects off-grid values."""
        L = tree.digits_per_variable
        if len(coords) != tree.n_variables:
            raise IncompleteGridPoint(f"expected {tree.n_variables} coordinates, got {len(coords)}")
        per_var = {}
        for i, x in zip(tree.variables, coords):
            digits = encode(float(x), L)
            if strict and decode(digits) != float(x):
                raise OffGridPoint(f"x_{i}={x!r} is not a multiple of 2^-{L}")
            per_var[i] = digits
        return cls.from_mapping({v: per_var[v.variable_index][v.digit_index - 1] for v in tree.vertices})

    def as_dict(self) -> dict:
        return dict(self.bits)

    def validate(self, tree: LabeledTree) -> None:
        have = {v for v, _ in self.bits}
        missing = [v for v in tree.vertices if v not in have]
        if missing:
            raise IncompleteGridPoint(f"grid point lacks digits {', '.join(map(str, missing[:5]))}")

    def bit_row(self, tree: LabeledTree) -> np.ndarray:
        self.validate(tree)
        d = self.as_dict()
        return np.array([d[v] for v in tree.vertices], dtype=np.int8)

    def coordinates(self, tree: LabeledTree) -> Tuple[float, ...]:
        return tuple(bits_to_coordinates(tree, self.bit_row(tree)[None, :])[0])


# ---------- batched helpers ----------

def digit_weights(tree: LabeledTree) -> np.ndarray:
    """(n_vertices, n_variables) matrix W with coords = bits @ W."""
    col = {i: k for k, i in enumerate(tree.variables)}
    w = np.zeros((len(tree.vertices), tree.n_variables))
    for r, v in enumerate(tree.vertices):
        w[r, col[v.variable_index]] = math.ldexp(1.0, -v.digit_index)
    return w


def bits_to_coordinates(tree: LabeledTree, bits: np.ndarray) -> np.ndarray:
    return np.asarray(bits, dtype=float) @ digit_weights(tree)


def integers_to_bits(tree: LabeledTree, grid: np.ndarray) -> np.ndarray:
    """Integer grid positions m_i in [0, 2^L) (columns = tree.variables) to bit rows."""
    grid = np.asarray(grid, dtype=np.int64)
    L = tree.digits_per_variable
    col = {i: k for k, i in enumerate(tree.variables)}
    out = np.empty((grid.shape[0], len(tree.vertices)), dtype=np.int8)
    for r, v in enumerate(tree.vertices):
        out[:, r] = (grid[:, col[v.variable_index]] >> (L - v.digit_index)) & 1
    return out


def coordinates_to_bits(tree: LabeledTree, coords: np.ndarray) -> np.ndarray:
    coords = np.atleast_2d(np.asarray(coords, dtype=float))
    if np.any(coords < 0.0) or np.any(coords >= 1.0):
        raise OutOfDomain("coordinates outside [0, 1)")
    grid = np.floor(np.ldexp(coords, tree.digits_per_variable)).astype(np.int64)
    return integers_to_bits(tree, grid)


def all_bit_rows(tree: LabeledTree) -> np.ndarray:
    """Every grid point of a small tree, as (2^nV, nV) bit rows."""
    nv = len(tree.vertices)
    if nv > 24:
        raise OutOfDomain(f"refusing to enumerate 2^{nv} grid points")
    idx = np.arange(2**nv, dtype=np.int64)
    return ((idx[:, None] >> np.arange(nv - 1, -1, -1)) & 1).astype(np.int8)


def points_from_rows(tree: LabeledTree, rows: Iterable[np.ndarray]) -> list:
    return [GridPoint(tuple(zip(tree.vertices, (int(b) for b in row)))) for row in rows]
