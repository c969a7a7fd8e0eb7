"""
TreeTen - Sampled error metrics

eps     = mean |f - T| over a sample set of grid points
eps_inf = max  |f - T| over the same set

A SampleSet stores integer grid positions, so the same points can be reused
for networks on different trees over the same variables.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable, List, Tuple, Union

import numpy as np

from src.topology.encoding import GridPoint, integers_to_bits, points_from_rows
from src.topology.tree import LabeledTree
from src.ttn.network import TreeTensorNetwork, evaluate_batch
from src.utils.errors import ConfigError

logger = logging.getLogger(__name__)

Target = Union[TreeTensorNetwork, Callable[[np.ndarray], np.ndarray]]

# largest grid whose points can be indexed by one int64 draw
_MAX_INDEXED_BITS = 62


@dataclass(frozen=True)
class SampleSet:
    grid: np.ndarray          # (m, n) integer positions in [0, 2^L)
    L: int
    seed: int
    with_replacement: bool = False

    def __len__(self) -> int:
        return int(self.grid.shape[0])

    @property
    def coordinates(self) -> np.ndarray:
        return np.ldexp(self.grid.astype(float), -self.L)

    def bits(self, tree: LabeledTree) -> np.ndarray:
        if tree.n_variables != self.grid.shape[1] or tree.digits_per_variable != self.L:
            raise ConfigError("sample set does not match the tree's variables or digit count")
        return integers_to_bits(tree, self.grid)

    def points(self, tree: LabeledTree) -> List[GridPoint]:
        return points_from_rows(tree, self.bits(tree))


def draw_samples(n_variables: int, L: int, n_samples: int, seed: int) -> SampleSet:
    """Uniform grid points, without replacement whenever the grid is indexable."""
    if n_samples < 1:
        raise ConfigError("n_samples must be >= 1")
    rng = np.random.default_rng(seed)
    total_bits = n_variables * L
    if total_bits <= _MAX_INDEXED_BITS and n_samples <= 2**total_bits:
        flat = rng.choice(2**total_bits, size=n_samples, replace=False).astype(np.int64)
        shifts = L * np.arange(n_variables - 1, -1, -1, dtype=np.int64)
        grid = (flat[:, None] >> shifts) & ((1 << L) - 1)
        return SampleSet(grid, L, seed)
    grid = rng.integers(0, 2**L, size=(n_samples, n_variables), dtype=np.int64)
    return SampleSet(grid, L, seed, with_replacement=True)


def samples_for(tree: LabeledTree, n_samples: int, seed: int) -> SampleSet:
    return draw_samples(tree.n_variables, tree.digits_per_variable, n_samples, seed)


def target_values(f: Target, samples: SampleSet) -> np.ndarray:
    if isinstance(f, TreeTensorNetwork):
        return evaluate_batch(f, samples.bits(f.tree))
    return np.asarray(f(samples.coordinates)).reshape(len(samples))


def error_metrics(net: TreeTensorNetwork, f: Target, samples: SampleSet) -> Tuple[float, float]:
    """(eps, eps_inf) of net against f on the sample set."""
    if len(samples) == 0:
        raise ConfigError("empty sample set")
    approx = evaluate_batch(net, samples.bits(net.tree))
    exact = target_values(f, samples)
    diff = np.abs(exact - approx)
    return float(diff.mean()), float(diff.max())
