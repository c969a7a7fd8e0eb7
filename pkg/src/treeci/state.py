"""
TreeTen - Interpolative gauge for tree tensor cross interpolation

In the gauge every tensor except the centre is an interpolation tensor P
pointing towards the centre: read as a matrix with rows (own digit, bonds
away from the centre) and one column per bond value of the edge towards the
centre, P is the identity on the pivot rows of that edge. Each bond value of
an edge u -> v (towards the centre) names a pivot: a bit configuration of the
subtree on u's side. The centre tensor holds exact target values at the
configurations its own digit and the neighbouring pivots assemble.

Pivot configurations are stored as full-length bit rows (columns ordered as
tree.vertices) that are zero outside the subtree, so a configuration for a
tensor entry is the sum of the contributing rows.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from src.tensor.dense import DenseTensor, contract
from src.tensor.factorize import interpolative_decomposition
from src.topology.encoding import bits_to_coordinates
from src.topology.tree import DigitId, Edge, LabeledTree, edge_key
from src.ttn.network import TreeTensorNetwork, bond_index, site_index
from src.utils.errors import DegenerateInit, NetworkError

logger = logging.getLogger(__name__)

TargetFunction = Callable[[np.ndarray], np.ndarray]

_TMP = "__pivot__"


@dataclass
class PivotTable:
    """Pivot configurations per directed edge (u, v); row k belongs to bond value k."""

    tree: LabeledTree
    lists: Dict[Edge, np.ndarray] = field(default_factory=dict)

    def __getitem__(self, edge: Edge) -> np.ndarray:
        return self.lists[edge]

    def __setitem__(self, edge: Edge, rows: np.ndarray) -> None:
        self.lists[edge] = np.asarray(rows, dtype=np.int8)

    def __contains__(self, edge: object) -> bool:
        return edge in self.lists

    def site_rows(self, v: DigitId) -> np.ndarray:
        rows = np.zeros((2, len(self.tree.vertices)), dtype=np.int8)
        rows[1, self.tree.position(v)] = 1
        return rows

    def is_valid(self, edge: Edge, bond_dim: int) -> bool:
        rows = self.lists.get(edge)
        if rows is None or rows.shape != (bond_dim, len(self.tree.vertices)):
            return False
        if not np.isin(rows, (0, 1)).all():
            return False
        inside = np.zeros(len(self.tree.vertices), dtype=bool)
        for w in self.tree.subtree(*edge):
            inside[self.tree.position(w)] = True
        return not rows[:, ~inside].any()


@dataclass
class TciState:
    tree: LabeledTree
    tensors: Dict[DigitId, DenseTensor]
    pivots: PivotTable
    center: DigitId
    target: TargetFunction
    call_count: int = 0
    # bond dims at the start of the current sweep, for the growth cap
    sweep_start_dims: Dict[Edge, int] = field(default_factory=dict)

    @property
    def net(self) -> TreeTensorNetwork:
        return TreeTensorNetwork(self.tree, dict(self.tensors))

    def bond_dim(self, u: DigitId, v: DigitId) -> int:
        return self.tensors[u].dim(bond_index(u, v))

    @property
    def max_bond(self) -> int:
        return max((self.bond_dim(u, v) for u, v in self.tree.edges), default=1)

    def call(self, bits: np.ndarray) -> np.ndarray:
        """Evaluate the target at bit rows (m, n_vertices)."""
        bits = np.asarray(bits).reshape(-1, len(self.tree.vertices))
        self.call_count += bits.shape[0]
        values = np.asarray(self.target(bits_to_coordinates(self.tree, bits)))
        return values.reshape(bits.shape[0])

    # ---------- configurations ----------

    def axis_rows(self, owner: DigitId, index: str) -> np.ndarray:
        """Bit rows selected by each value of `index` on the tensor at `owner`."""
        if index == site_index(owner):
            return self.pivots.site_rows(owner)
        for nb in self.tree.neighbors(owner):
            if index == bond_index(owner, nb):
                return self.pivots[(nb, owner)]
        raise NetworkError(f"index {index} is not an incoming index of {owner}")

    def configurations(self, parts: Sequence[Tuple[DigitId, str]]) -> np.ndarray:
        """Bit rows for every entry of a tensor whose axes are `parts`, shape (*dims, nV)."""
        n_v = len(self.tree.vertices)
        grids = [self.axis_rows(owner, idx) for owner, idx in parts]
        out = np.zeros(tuple(g.shape[0] for g in grids) + (n_v,), dtype=np.int8)
        for axis, g in enumerate(grids):
            shape = [1] * len(grids) + [n_v]
            shape[axis] = g.shape[0]
            out = out + g.reshape(shape)
        return out

    def exact_tensor(self, parts: Sequence[Tuple[DigitId, str]]) -> np.ndarray:
        configs = self.configurations(parts)
        return self.call(configs).reshape(configs.shape[:-1])

    # ---------- diagnostics ----------

    def center_exactness_error(self, n_checks: int = 20, rng: Optional[np.random.Generator] = None) -> float:
        """Max |T_center - f| over randomly chosen centre entries."""
        rng = rng or np.random.default_rng(0)
        t = self.tensors[self.center]
        parts = [(self.center, i) for i in t.indices]
        configs = self.configurations(parts).reshape(-1, len(self.tree.vertices))
        picks = rng.choice(configs.shape[0], size=min(n_checks, configs.shape[0]), replace=False)
        exact = self.call(configs[picks])
        return float(np.max(np.abs(t.values[picks] - exact)))

    def pivot_lists_valid(self) -> bool:
        """Every edge pointing towards the centre has a well-formed pivot list."""
        _, parent = self.tree.traversal(self.center)
        for v, p in parent.items():
            if p is not None and not self.pivots.is_valid((v, p), self.bond_dim(v, p)):
                return False
        return True


def _row_interpolation(
    matrix: np.ndarray, tol: float, r_max: Optional[int]
) -> Tuple[np.ndarray, np.ndarray, bool]:
    """matrix ~ P @ matrix[pivots, :] with P identity on the pivot rows."""
    decomposition = interpolative_decomposition(matrix.T, tol=tol, r_max=r_max)
    return decomposition.Z.T, decomposition.pivots, decomposition.rank_exceeded


def _incoming(tree: LabeledTree, v: DigitId, towards: DigitId) -> List[str]:
    return [site_index(v)] + [bond_index(v, nb) for nb in tree.neighbors(v) if nb != towards]


def init_gauge(
    net: TreeTensorNetwork,
    f: TargetFunction,
    root: Optional[DigitId] = None,
    tol: float = 0.0,
) -> TciState:
    """
    Leaves-to-root interpolative decompositions: each tensor becomes its
    interpolation factor, the selected rows are absorbed by the parent, and
    the root is finally replaced by exact target values.
    """
    tree = net.tree
    root = root or tree.root
    if any(not np.any(t.data) for t in net.tensors.values()):
        raise DegenerateInit("initial network is identically zero")
    state = TciState(tree, dict(net.tensors), PivotTable(tree), root, f)
    order, parent = tree.traversal(root)

    for w in reversed(order):
        p = parent[w]
        if p is None:
            continue
        bond = bond_index(w, p)
        rows = _incoming(tree, w, p)
        t = state.tensors[w]
        matrix, _ = t.matricize(rows)
        if not np.any(matrix):
            raise DegenerateInit(f"initial network vanishes at digit {w}")
        P, piv, _ = _row_interpolation(matrix, tol, None)
        row_dims = [t.dim(i) for i in rows]
        state.tensors[w] = DenseTensor(tuple(rows) + (bond,), P.reshape(row_dims + [len(piv)]))

        configs = state.configurations([(w, i) for i in rows]).reshape(-1, len(tree.vertices))
        state.pivots[(w, p)] = configs[piv]

        kept = DenseTensor((_TMP, bond), matrix[piv, :])
        state.tensors[p] = contract(kept, state.tensors[p]).rename({_TMP: bond})

    indices = (site_index(root),) + tuple(bond_index(root, nb) for nb in tree.neighbors(root))
    state.tensors[root] = DenseTensor(indices, state.exact_tensor([(root, i) for i in indices]))
    logger.debug(f"interpolative gauge at {root}: chi={state.max_bond}, calls={state.call_count}")
    return state


@dataclass(frozen=True)
class UpdateResult:
    error: float
    replaced: int
    rank: int
    rank_exceeded: bool


def two_site_update(
    state: TciState,
    neighbor: DigitId,
    chi_max: int,
    tol: float = 1e-12,
) -> UpdateResult:
    """
    Merge the centre with `neighbor`, correct the merged tensor against the
    target, split it with a row interpolative decomposition and move the
    centre to `neighbor`.
    """
    tree = state.tree
    c = state.center
    if not tree.has_edge(c, neighbor):
        raise NetworkError(f"{neighbor} is not adjacent to the centre {c}")
    bond = bond_index(c, neighbor)

    left = _incoming(tree, c, neighbor)
    right = _incoming(tree, neighbor, c)
    merged = contract(state.tensors[c], state.tensors[neighbor]).transpose(left + right)
    exact = state.exact_tensor([(c, i) for i in left] + [(neighbor, i) for i in right])

    deviation = np.abs(exact - merged.data)
    error = float(deviation.max())
    scale = float(np.max(np.abs(exact)))
    replace = deviation > tol * scale
    corrected = np.where(replace, exact, merged.data)

    left_dims = [merged.dim(i) for i in left]
    n_rows = int(np.prod(left_dims))
    start = state.sweep_start_dims.get(edge_key(c, neighbor), state.bond_dim(c, neighbor))
    r_max = max(1, min(chi_max, 2 * start))
    P, piv, exceeded = _row_interpolation(corrected.reshape(n_rows, -1), tol, r_max)

    state.tensors[c] = DenseTensor(tuple(left) + (bond,), P.reshape(left_dims + [len(piv)]))
    configs = state.configurations([(c, i) for i in left]).reshape(-1, len(tree.vertices))
    state.pivots[(c, neighbor)] = configs[piv]
    centre_data = exact.reshape(n_rows, -1)[piv].reshape([len(piv)] + [merged.dim(i) for i in right])
    state.tensors[neighbor] = DenseTensor((bond,) + tuple(right), centre_data)
    state.center = neighbor

    return UpdateResult(error=error, replaced=int(replace.sum()), rank=len(piv), rank_exceeded=exceeded)
