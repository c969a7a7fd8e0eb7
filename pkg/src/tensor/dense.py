"""
TreeTen - Dense tensors with named indices

A DenseTensor is an n-dimensional numpy array whose axes carry unique ids.
Operations match axes by id, never by position; the stored axis order is the
row-major layout used for serialization.
"""

from __future__ import annotations

import string
from dataclasses import dataclass
from typing import Dict, Hashable, Iterable, List, Mapping, Sequence, Tuple

import numpy as np

from src.utils.errors import DimensionMismatch

IndexId = Hashable


@dataclass(frozen=True)
class DenseTensor:
    indices: Tuple[IndexId, ...]
    data: np.ndarray

    def __post_init__(self) -> None:
        data = np.asarray(self.data)
        if not (np.issubdtype(data.dtype, np.floating) or np.issubdtype(data.dtype, np.complexfloating)):
            data = data.astype(np.float64)
        indices = tuple(self.indices)
        if len(set(indices)) != len(indices):
            raise DimensionMismatch(f"duplicate index ids {indices}")
        if data.ndim != len(indices):
            raise DimensionMismatch(f"{len(indices)} index ids for an order-{data.ndim} array")
        object.__setattr__(self, "indices", indices)
        object.__setattr__(self, "data", data)

    # ---------- shape ----------
    @property
    def dims(self) -> Dict[IndexId, int]:
        return dict(zip(self.indices, self.data.shape))

    def dim(self, index: IndexId) -> int:
        return self.data.shape[self.axis(index)]

    def axis(self, index: IndexId) -> int:
        try:
            return self.indices.index(index)
        except ValueError:
            raise DimensionMismatch(f"index {index!r} not in {self.indices}") from None

    @property
    def size(self) -> int:
        return int(self.data.size)

    @property
    def dtype(self) -> np.dtype:
        return self.data.dtype

    @property
    def values(self) -> np.ndarray:
        """Flat row-major payload."""
        return self.data.reshape(-1)

    @classmethod
    def scalar(cls, value: complex) -> "DenseTensor":
        return cls((), np.asarray(value))

    # ---------- layout ----------
    def transpose(self, order: Sequence[IndexId]) -> "DenseTensor":
        order = tuple(order)
        if set(order) != set(self.indices) or len(order) != len(self.indices):
            raise DimensionMismatch(f"cannot reorder {self.indices} as {order}")
        return DenseTensor(order, np.transpose(self.data, [self.axis(i) for i in order]))

    def rename(self, mapping: Mapping[IndexId, IndexId]) -> "DenseTensor":
        return DenseTensor(tuple(mapping.get(i, i) for i in self.indices), self.data)

    def slice(self, index: IndexId, value: int) -> "DenseTensor":
        ax = self.axis(index)
        rest = self.indices[:ax] + self.indices[ax + 1:]
        return DenseTensor(rest, np.take(self.data, value, axis=ax))

    def matricize(self, row_indices: Sequence[IndexId]) -> Tuple[np.ndarray, Tuple[IndexId, ...]]:
        """Matrix view with rows = row_indices (in the given order), cols = the rest."""
        rows = tuple(row_indices)
        cols = tuple(i for i in self.indices if i not in rows)
        t = self.transpose(rows + cols)
        nr = int(np.prod([self.dim(i) for i in rows], dtype=np.int64))
        return t.data.reshape(nr, -1), cols

    def astype(self, dtype) -> "DenseTensor":
        return DenseTensor(self.indices, self.data.astype(dtype))

    def conj(self) -> "DenseTensor":
        return DenseTensor(self.indices, np.conj(self.data))

    def scaled(self, factor: complex) -> "DenseTensor":
        return DenseTensor(self.indices, self.data * factor)

    def norm(self) -> float:
        return float(np.linalg.norm(self.data))


def _check_shared(a: DenseTensor, b: DenseTensor, shared: Iterable[IndexId]) -> None:
    for i in shared:
        if a.dim(i) != b.dim(i):
            raise DimensionMismatch(f"index {i!r}: dimension {a.dim(i)} vs {b.dim(i)}")


def contract(a: DenseTensor, b: DenseTensor) -> DenseTensor:
    """Sum over every index id the two tensors share."""
    shared = [i for i in a.indices if i in b.indices]
    _check_shared(a, b, shared)
    data = np.tensordot(a.data, b.data, axes=([a.axis(i) for i in shared], [b.axis(i) for i in shared]))
    out = tuple(i for i in a.indices if i not in shared) + tuple(i for i in b.indices if i not in shared)
    return DenseTensor(out, data)


def direct_sum(a: DenseTensor, b: DenseTensor, shared: Iterable[IndexId] = ()) -> DenseTensor:
    """
    Block-diagonal embedding: for every value of the shared indices the result
    slice is a-slice (+) b-slice. Non-shared indices must appear in both
    tensors; their dimensions add.
    """
    shared = tuple(shared)
    if set(a.indices) != set(b.indices):
        raise DimensionMismatch(f"direct sum needs equal index sets, got {a.indices} and {b.indices}")
    _check_shared(a, b, shared)
    b = b.transpose(a.indices)
    shape = [
        a.data.shape[k] if i in shared else a.data.shape[k] + b.data.shape[k]
        for k, i in enumerate(a.indices)
    ]
    out = np.zeros(shape, dtype=np.result_type(a.data, b.data))
    block_a = tuple(slice(None) if i in shared else slice(0, a.data.shape[k]) for k, i in enumerate(a.indices))
    block_b = tuple(slice(None) if i in shared else slice(a.data.shape[k], None) for k, i in enumerate(a.indices))
    out[block_a] = a.data
    out[block_b] = b.data
    return DenseTensor(a.indices, out)


def outer_fuse(
    a: DenseTensor,
    b: DenseTensor,
    shared: Iterable[IndexId] = (),
    fuse_pairs: Sequence[Tuple[IndexId, IndexId]] = (),
) -> DenseTensor:
    """
    Elementwise over shared indices, outer product over the rest. Each
    (a_index, b_index) pair becomes one index named a_index with dimension
    d_a * d_b and combined value alpha_a * d_b + alpha_b.
    """
    shared = tuple(shared)
    _check_shared(a, b, shared)
    for ia, ib in fuse_pairs:
        a.axis(ia), b.axis(ib)
        if ia in shared or ib in shared:
            raise DimensionMismatch(f"fused pair ({ia!r}, {ib!r}) overlaps the shared indices")

    letters = iter(string.ascii_letters)
    sym: Dict[Tuple[str, IndexId], str] = {}
    for i in a.indices:
        sym[("a", i)] = next(letters)
    for i in b.indices:
        sym[("b", i)] = sym[("a", i)] if i in shared else next(letters)
    for i in b.indices:
        if i in a.indices and i not in shared and not any(i == ib for _, ib in fuse_pairs):
            raise DimensionMismatch(f"index {i!r} appears in both tensors but is neither shared nor fused")

    fused_a = {ia for ia, _ in fuse_pairs}
    fused_b = {ib for _, ib in fuse_pairs}
    out_syms: List[str] = []
    out_ids: List[IndexId] = []
    out_groups: List[int] = []
    for i in a.indices:
        if i in shared:
            out_syms.append(sym[("a", i)])
            out_ids.append(i)
            out_groups.append(1)
        elif i in fused_a:
            ib = dict(fuse_pairs)[i]
            out_syms += [sym[("a", i)], sym[("b", ib)]]
            out_ids.append(i)
            out_groups.append(2)
        else:
            out_syms.append(sym[("a", i)])
            out_ids.append(i)
            out_groups.append(1)
    for i in b.indices:
        if i in shared or i in fused_b:
            continue
        out_syms.append(sym[("b", i)])
        out_ids.append(i)
        out_groups.append(1)

    spec = (
        "".join(sym[("a", i)] for i in a.indices)
        + ","
        + "".join(sym[("b", i)] for i in b.indices)
        + "->"
        + "".join(out_syms)
    )
    raw = np.einsum(spec, a.data, b.data)
    shape, k = [], 0
    for g in out_groups:
        shape.append(int(np.prod(raw.shape[k:k + g])))
        k += g
    return DenseTensor(tuple(out_ids), raw.reshape(shape))
