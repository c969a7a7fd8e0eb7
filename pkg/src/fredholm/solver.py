"""
TreeTen - Fixed-point iteration for Fredholm equations of the second kind

    f_{k+1}(x) = g(x) + lam * integral K(x, t) f_k(t)^alpha dt

Per iteration: relabel f onto the t variables, raise it to alpha with
staged truncation, lift it onto the kernel tree, multiply by K, integrate the
t variables out, add g and truncate.
"""

from __future__ import annotations

import logging
import sys
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from src.analysis.metrics import SampleSet, error_metrics, samples_for
from src.fredholm.problem import FredholmProblem, remap_variables
from src.topology.tree import Edge
from src.ttn.algebra import add, embed, multiply, scale
from src.ttn.integration import partial_integrate
from src.ttn.network import TreeTensorNetwork, evaluate_batch
from src.ttn.truncation import truncate
from src.utils.errors import TreeMismatch

logger = logging.getLogger(__name__)

Reference = Callable[[np.ndarray], np.ndarray]

# consecutive growing changes before the run is flagged as diverging
DIVERGENCE_STREAK = 3
TRACE_SAMPLES = 100


@dataclass
class SolveTrace:
    errors: List[float] = field(default_factory=list)        # mean |f - reference|, NaN without one
    max_errors: List[float] = field(default_factory=list)
    max_bonds: List[int] = field(default_factory=list)
    changes: List[float] = field(default_factory=list)       # relative change to the previous iterate
    rank_bound_ok: List[bool] = field(default_factory=list)
    converged: bool = False
    diverging: bool = False

    @property
    def iterations(self) -> int:
        return len(self.max_bonds)

    def rows(self) -> List[Tuple[int, float, int]]:
        return [(k + 1, e, chi) for k, (e, chi) in enumerate(zip(self.errors, self.max_bonds))]


def _power(ft: TreeTensorNetwork, alpha: int, chi_cap: int, tol: float) -> TreeTensorNetwork:
    out = ft
    for _ in range(alpha - 1):
        out = truncate(multiply(out, ft), chi_cap, tol)
    return out


def apply_map(problem: FredholmProblem, f: TreeTensorNetwork) -> TreeTensorNetwork:
    """One application of f -> g + lam * integral K f^alpha dt."""
    if f.tree != problem.x_tree:
        raise TreeMismatch("iterate must live on the x tree of the problem")
    chi_cap = problem.chi_max or sys.maxsize
    ft = remap_variables(f, problem.x_to_t)
    power = _power(ft, problem.alpha, chi_cap, problem.power_tol)
    integrand = multiply(problem.kernel_net, embed(power, problem.kernel_net.tree))
    integral = partial_integrate(integrand, problem.t_variables)
    if problem.lam != 1.0:
        integral = scale(integral, problem.lam)
    return truncate(add(problem.g_net, integral), chi_cap, problem.tol)


def _within_rank_bound(net: TreeTensorNetwork, bound: Dict[Edge, int]) -> bool:
    dims = net.bond_dims
    return all(dims[e] <= b for e, b in bound.items())


def solve(
    problem: FredholmProblem,
    f1: TreeTensorNetwork,
    reference: Optional[Reference] = None,
    samples: Optional[SampleSet] = None,
    seed: int = 0,
    stop_factor: float = 1.0,
) -> Tuple[TreeTensorNetwork, SolveTrace]:
    """
    Iterate up to problem.n_iters times. Stops early once the relative change
    at the sample points drops below stop_factor * 2^-L.

    A streak of DIVERGENCE_STREAK growing changes raises the diverging flag.
    A run that converges afterwards clears it again.
    """
    tree = problem.x_tree
    samples = samples or samples_for(tree, TRACE_SAMPLES, seed)
    bits = samples.bits(tree)
    stop_at = stop_factor * 2.0 ** (-tree.digits_per_variable)
    bound = problem.rank_bound()

    trace = SolveTrace()
    f = f1
    previous = evaluate_batch(f, bits)
    growing = 0
    for k in range(problem.n_iters):
        f = apply_map(problem, f)
        current = evaluate_batch(f, bits)
        change = float(np.max(np.abs(current - previous)) / max(float(np.max(np.abs(current))), 1e-300))
        previous = current

        ok = _within_rank_bound(f, bound)
        if not ok:
            logger.warning(f"⚠️ iteration {k + 1}: bond dims exceed g + kernel bound")
        if reference is not None:
            eps, eps_inf = error_metrics(f, reference, samples)
        else:
            eps, eps_inf = float("nan"), float("nan")

        if trace.changes and change > trace.changes[-1]:
            growing += 1
        else:
            growing = 0
        if growing >= DIVERGENCE_STREAK and not trace.diverging:
            trace.diverging = True
            logger.warning(f"⚠️ iterate change grew {growing} times in a row (now {change:.3e})")

        trace.errors.append(eps)
        trace.max_errors.append(eps_inf)
        trace.max_bonds.append(f.max_bond)
        trace.changes.append(change)
        trace.rank_bound_ok.append(ok)
        logger.info(f"🧮 iteration {k + 1}: eps={eps:.3e} change={change:.3e} chi={f.max_bond}")

        if change < stop_at:
            trace.converged = True
            break

    if trace.converged and trace.diverging:
        trace.diverging = False
        logger.info(f"✅ change settled below {stop_at:.1e} after an early growth streak")
    return f, trace
