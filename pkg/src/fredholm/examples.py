"""
TreeTen - Two worked non-linear Fredholm problems with known solutions

Example I (alpha = 3), built exactly from polynomials:
    K = x1 x2^2 t1 / 6
    g = sin(x2) - c x1 x2^2,  c = (1 - cos 1 (sin^2 1 / 2 + 1)) / 18
    f = sin(x2)

Example II (alpha = 2), K and g learned by cross interpolation:
    K = x1 (1 + t1 + t2) / (1 + x2)
    g = 1 / (1 + x1 + x2)^2 - x1 / (6 (1 + x2))
    f = 1 / (1 + x1 + x2)^2
"""

from __future__ import annotations

import logging
import math
import sys
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from src.funcbuild.elementary import build_constant
from src.funcbuild.polynomial import PolynomialSpec, build_polynomial
from src.fredholm.problem import FredholmProblem, build_doubled_tree
from src.topology.generators import named_tree
from src.topology.tree import LabeledTree
from src.treeci.learn import tci_learn
from src.ttn.algebra import add, multiply, scale
from src.ttn.network import TreeTensorNetwork
from src.ttn.truncation import truncate

logger = logging.getLogger(__name__)

DEFAULT_TREE = "coupled-binary"
SIN_TAYLOR_DEGREE = 17
EXACT_BUILD_TOL = 1e-14


@dataclass(frozen=True)
class FredholmInstance:
    name: str
    problem: FredholmProblem
    f1: TreeTensorNetwork
    reference: Callable[[np.ndarray], np.ndarray]


def example_one_constant() -> float:
    s, c = math.sin(1.0), math.cos(1.0)
    return (1.0 - c * (s * s / 2.0 + 1.0)) / 18.0


def sin_taylor(degree: int = SIN_TAYLOR_DEGREE) -> Sequence[float]:
    return [
        (-1.0) ** ((k - 1) // 2) / math.factorial(k) if k % 2 else 0.0
        for k in range(degree + 1)
    ]


def _poly(tree: LabeledTree, coefficients: Sequence[float], variable: int) -> TreeTensorNetwork:
    return build_polynomial(tree, PolynomialSpec(tuple(coefficients), variable))


def example_one(
    L: int,
    tree_name: str = DEFAULT_TREE,
    n_iters: int = 20,
    chi_max: Optional[int] = None,
) -> FredholmInstance:
    tx = named_tree(tree_name, 2, L)
    kt = build_doubled_tree(tx)

    kernel = multiply(multiply(_poly(kt, [0, 1], 1), _poly(kt, [0, 0, 1], 2)), _poly(kt, [0, 1], 3))
    kernel = truncate(scale(kernel, 1.0 / 6.0), sys.maxsize, EXACT_BUILD_TOL)

    x1_x2sq = multiply(_poly(tx, [0, 1], 1), _poly(tx, [0, 0, 1], 2))
    g = add(_poly(tx, sin_taylor(), 2), scale(x1_x2sq, -example_one_constant()))
    g = truncate(g, sys.maxsize, EXACT_BUILD_TOL)
    logger.info(f"📐 Fredholm example I (L={L}): chi_K={kernel.max_bond}, chi_g={g.max_bond}")

    problem = FredholmProblem(g, kernel, alpha=3, n_iters=n_iters, chi_max=chi_max)
    return FredholmInstance("fredholm-ex1", problem, build_constant(tx, 1.0), lambda x: np.sin(x[:, 1]))


def example_two_kernel(z: np.ndarray) -> np.ndarray:
    """z = (x1, x2, t1, t2) rows."""
    return z[:, 0] * (1.0 + z[:, 2] + z[:, 3]) / (1.0 + z[:, 1])


def example_two_solution(x: np.ndarray) -> np.ndarray:
    return 1.0 / (1.0 + x[:, 0] + x[:, 1]) ** 2


def example_two_source(x: np.ndarray) -> np.ndarray:
    return example_two_solution(x) - x[:, 0] / (6.0 * (1.0 + x[:, 1]))


def example_two(
    L: int,
    tree_name: str = DEFAULT_TREE,
    n_iters: int = 20,
    chi_tci: int = 10,
    tci_tol: float = 1e-12,
    tci_sweeps: int = 6,
    chi_max: Optional[int] = None,
) -> FredholmInstance:
    tx = named_tree(tree_name, 2, L)
    kt = build_doubled_tree(tx)
    kernel, k_report = tci_learn(example_two_kernel, kt, chi_tci, tci_tol, tci_sweeps)
    g, g_report = tci_learn(example_two_source, tx, chi_tci, tci_tol, tci_sweeps)
    logger.info(
        f"📐 Fredholm example II (L={L}): chi_K={kernel.max_bond} "
        f"(eps_inf {k_report.sweep_errors[-1]:.1e}), chi_g={g.max_bond} (eps_inf {g_report.sweep_errors[-1]:.1e})"
    )
    problem = FredholmProblem(g, kernel, alpha=2, n_iters=n_iters, chi_max=chi_max)
    return FredholmInstance("fredholm-ex2", problem, build_constant(tx, 1.0), example_two_solution)
