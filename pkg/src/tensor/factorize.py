"""
TreeTen - Matrix factorizations on DenseTensors

- svd_split: truncated SVD across a row/column bipartition of the indices
- qr_split: orthogonal left factor, used to move orthogonality centres
- interpolative_decomposition: M ~ C Z with C an exact column subset of M
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Literal, Optional, Sequence

import numpy as np
import scipy.linalg

from src.tensor.dense import DenseTensor, IndexId
from src.utils.errors import EmptyIndexSet, SvdFailure

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Factorization:
    left: DenseTensor
    right: DenseTensor
    kept_rank: int
    discarded_weight: float
    bond: IndexId


@dataclass(frozen=True)
class InterpolativeDecomposition:
    C: np.ndarray             # exact columns M[:, pivots]
    Z: np.ndarray             # (rank, n_cols), identity on pivot columns
    pivots: np.ndarray        # selected column ids, in selection order
    rank_exceeded: bool       # tol not reached within r_max
    residual: float           # max |M - C Z|

    @property
    def rank(self) -> int:
        return len(self.pivots)


def _split_shape(t: DenseTensor, row_indices: Sequence[IndexId]):
    rows = tuple(row_indices)
    if not rows:
        raise EmptyIndexSet("row index set is empty")
    for i in rows:
        t.axis(i)
    cols = tuple(i for i in t.indices if i not in rows)
    if not cols:
        raise EmptyIndexSet("column index set is empty")
    return rows, cols


def _svd(m: np.ndarray):
    try:
        return np.linalg.svd(m, full_matrices=False)
    except np.linalg.LinAlgError:
        logger.warning("gesdd did not converge on %s matrix, retrying with gesvd", m.shape)
    try:
        return scipy.linalg.svd(m, full_matrices=False, lapack_driver="gesvd")
    except (np.linalg.LinAlgError, ValueError) as e:
        raise SvdFailure(f"SVD failed on {m.shape} matrix: {e}") from e


def svd_split(
    t: DenseTensor,
    row_indices: Sequence[IndexId],
    chi_max: int,
    tol: float = 0.0,
    bond: IndexId = "bond",
    absorb: Literal["left", "right"] = "right",
) -> Factorization:
    """
    Keep min(chi_max, smallest rank whose relative Frobenius error <= tol)
    singular values. discarded_weight = sum of dropped s^2 / sum of all s^2.
    """
    if chi_max < 1:
        raise ValueError("chi_max must be >= 1")
    rows, cols = _split_shape(t, row_indices)
    m, _ = t.matricize(rows)
    u, s, vh = _svd(m)

    weights = s**2
    total = float(weights.sum())
    if total == 0.0:
        keep = 1
    else:
        # tail[k] = weight dropped when keeping k values
        tail = np.concatenate([np.cumsum(weights[::-1])[::-1], [0.0]]) / total
        keep = int(np.argmax(tail <= tol**2))
        keep = max(keep, 1)
    keep = min(keep, chi_max, len(s))
    discarded = float(weights[keep:].sum() / total) if total > 0 else 0.0

    u, s, vh = u[:, :keep], s[:keep], vh[:keep, :]
    if absorb == "right":
        lmat, rmat = u, s[:, None] * vh
    else:
        lmat, rmat = u * s[None, :], vh

    row_shape = [t.dim(i) for i in rows]
    col_shape = [t.dim(i) for i in cols]
    left = DenseTensor(rows + (bond,), lmat.reshape(row_shape + [keep]))
    right = DenseTensor((bond,) + cols, rmat.reshape([keep] + col_shape))
    return Factorization(left, right, keep, discarded, bond)


def qr_split(t: DenseTensor, row_indices: Sequence[IndexId], bond: IndexId = "bond") -> Factorization:
    """t = Q R with Q isometric over row_indices; no truncation."""
    rows, cols = _split_shape(t, row_indices)
    m, _ = t.matricize(rows)
    q, r = scipy.linalg.qr(m, mode="economic")
    k = q.shape[1]
    left = DenseTensor(rows + (bond,), q.reshape([t.dim(i) for i in rows] + [k]))
    right = DenseTensor((bond,) + cols, r.reshape([k] + [t.dim(i) for i in cols]))
    return Factorization(left, right, k, 0.0, bond)


def interpolative_decomposition(
    M: np.ndarray,
    tol: float = 0.0,
    r_max: Optional[int] = None,
) -> InterpolativeDecomposition:
    """
    Greedy column selection by largest residual norm (pivoted Gram-Schmidt).
    Stops once max|M - C Z| <= tol * max|M|, at r_max columns, or when the
    remaining residual is numerically zero. Ties go to the lowest column id.
    """
    M = np.asarray(M)
    if M.ndim != 2:
        raise ValueError(f"expected a matrix, got shape {M.shape}")
    n_rows, n_cols = M.shape
    r_cap = min(n_rows, n_cols) if r_max is None else min(r_max, n_rows, n_cols)
    if r_cap < 1:
        raise ValueError("r_max must be >= 1")

    scale = float(np.max(np.abs(M))) if M.size else 0.0
    if scale == 0.0:
        # zero matrix: a single column reproduces it exactly
        Z = np.zeros((1, n_cols), dtype=M.dtype)
        Z[0, 0] = 1.0
        return InterpolativeDecomposition(M[:, :1].copy(), Z, np.array([0]), False, 0.0)

    frob = float(np.linalg.norm(M))
    residual = M.astype(np.result_type(M, np.float64), copy=True)
    pivots = []
    threshold = tol * scale
    res_max = scale
    reason = "exhausted"
    while True:
        if len(pivots) >= min(n_rows, n_cols):
            break
        if len(pivots) >= r_cap:
            reason = "cap"
            break
        norms = np.linalg.norm(residual, axis=0)
        if pivots:
            norms[pivots] = -1.0
        j = int(np.argmax(norms))  # first occurrence -> lowest id on ties
        if norms[j] <= 1e-14 * frob:
            break
        q = residual[:, j] / norms[j]
        residual -= np.outer(q, q.conj() @ residual)
        pivots.append(j)
        res_max = float(np.max(np.abs(residual)))
        if res_max <= threshold:
            reason = "tol"
            break

    piv = np.array(pivots, dtype=np.int64)
    C = M[:, piv]
    Z, *_ = np.linalg.lstsq(C, M, rcond=None)
    Z[:, piv] = np.eye(len(piv), dtype=Z.dtype)
    res_max = float(np.max(np.abs(M - C @ Z)))
    exceeded = reason == "cap" and res_max > threshold
    if exceeded:
        logger.debug("ID capped at rank %d with residual %.3e > %.3e", len(piv), res_max, threshold)
    return InterpolativeDecomposition(C, Z, piv, exceeded, res_max)
