"""
TreeTen - Mutual information between binary digits

The function is read as an unnormalized state psi(x). For a digit pair (a, b)
the two-digit reduced density matrix is

    rho_ab[s, s'] = sum_env psi(s, env) conj(psi(s', env)),

estimated from environment configurations drawn uniformly with replacement
(or enumerated exactly for small trees). M = S_a + S_b - S_ab with natural
log von Neumann entropies.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from src.topology.encoding import all_bit_rows, bits_to_coordinates
from src.topology.tree import DigitId, LabeledTree
from src.utils.errors import ConfigError, InsufficientSamples

logger = logging.getLogger(__name__)

TargetFunction = Callable[[np.ndarray], np.ndarray]

# enumerate the environment exactly up to this many free digits
MAX_EXACT_ENVIRONMENT_BITS = 20
_TRACE_FLOOR = 1e-300


def von_neumann_entropy(rho: np.ndarray) -> float:
    """-tr(rho ln rho) after clipping negative eigenvalues and renormalizing."""
    w = np.clip(np.linalg.eigvalsh(rho), 0.0, None)
    total = w.sum()
    if total <= 0.0:
        return 0.0
    w = w[w > 0.0] / total
    return float(-(w * np.log(w)).sum())


@dataclass(frozen=True)
class RdmEstimate:
    rho_ab: np.ndarray        # 4x4, basis (x_a, x_b) = 00, 01, 10, 11
    sample_count: int

    @property
    def rho_a(self) -> np.ndarray:
        return np.einsum("ijkj->ik", self.rho_ab.reshape(2, 2, 2, 2))

    @property
    def rho_b(self) -> np.ndarray:
        return np.einsum("ijil->jl", self.rho_ab.reshape(2, 2, 2, 2))

    def mutual_information(self) -> float:
        return (
            von_neumann_entropy(self.rho_a)
            + von_neumann_entropy(self.rho_b)
            - von_neumann_entropy(self.rho_ab)
        )


def environment_rows(
    tree: LabeledTree, n_samples: int, seed: int, exact: bool = False
) -> np.ndarray:
    """Bit rows (m, n_vertices) whose pair digits are overwritten later."""
    n_v = len(tree.vertices)
    if exact:
        if n_v - 2 > MAX_EXACT_ENVIRONMENT_BITS:
            raise ConfigError(f"exact trace over {n_v - 2} digits is too large")
        return all_bit_rows(tree)
    if n_samples < 1:
        raise ConfigError("n_samples must be >= 1")
    rng = np.random.default_rng(seed)
    return rng.integers(0, 2, size=(n_samples, n_v), dtype=np.int8)


def estimate_rdm(
    f: TargetFunction,
    tree: LabeledTree,
    a: DigitId,
    b: DigitId,
    env: np.ndarray,
    exact: bool = False,
) -> RdmEstimate:
    if a == b:
        raise ConfigError("mutual information needs two distinct digits")
    pa, pb = tree.position(a), tree.position(b)
    env = np.array(env, dtype=np.int8, copy=True)
    env[:, pa] = 0
    env[:, pb] = 0
    if exact:
        # full enumeration lists every environment four times
        env = np.unique(env, axis=0)

    psi = np.empty((env.shape[0], 4), dtype=complex)
    for s, (xa, xb) in enumerate(((0, 0), (0, 1), (1, 0), (1, 1))):
        rows = env.copy()
        rows[:, pa] = xa
        rows[:, pb] = xb
        psi[:, s] = np.asarray(f(bits_to_coordinates(tree, rows))).reshape(-1)

    rho = psi.T @ psi.conj()
    trace = float(np.real(np.trace(rho)))
    if not np.isfinite(trace) or trace <= _TRACE_FLOOR:
        raise InsufficientSamples(f"reduced density matrix for ({a}, {b}) has trace {trace:.3e}")
    rho = rho / trace
    if np.allclose(rho.imag, 0.0):
        rho = rho.real
    return RdmEstimate(rho, int(env.shape[0]))


def mutual_information(
    f: TargetFunction,
    tree: LabeledTree,
    a: DigitId,
    b: DigitId,
    n_samples: int,
    seed: int,
    exact: bool = False,
) -> float:
    env = environment_rows(tree, n_samples, seed, exact)
    return estimate_rdm(f, tree, a, b, env, exact).mutual_information()


def mi_matrix(
    f: TargetFunction,
    tree: LabeledTree,
    n_samples: int,
    seed: int,
    exact: bool = False,
    env: Optional[np.ndarray] = None,
) -> np.ndarray:
    """Symmetric (n_vertices x n_vertices) matrix in tree.vertices order, zero diagonal."""
    env = environment_rows(tree, n_samples, seed, exact) if env is None else env
    n_v = len(tree.vertices)
    out = np.zeros((n_v, n_v))
    for i in range(n_v):
        for j in range(i + 1, n_v):
            m = estimate_rdm(f, tree, tree.vertices[i], tree.vertices[j], env, exact).mutual_information()
            out[i, j] = out[j, i] = m
    logger.info(f"🔗 MI matrix over {n_v} digits from {env.shape[0]} environment rows")
    return out
