"""
Test suite for the fixed-point Fredholm solver
"""

import numpy as np
import pytest

from src.analysis.metrics import error_metrics, samples_for
from src.fredholm import solver as solver_module
from src.fredholm.examples import example_one, example_two, sin_taylor
from src.fredholm.problem import FredholmProblem, build_doubled_tree
from src.fredholm.solver import apply_map, solve
from src.funcbuild.elementary import build_constant
from src.funcbuild.polynomial import PolynomialSpec, build_polynomial
from src.topology.encoding import all_bit_rows
from src.topology.generators import named_tree
from src.ttn.network import evaluate_batch
from src.utils.errors import TreeMismatch


def _check_example(instance, L):
    f, trace = solve(instance.problem, instance.f1, instance.reference, seed=7)
    assert trace.converged and not trace.diverging
    assert trace.iterations <= 20
    assert all(trace.rank_bound_ok)
    assert trace.errors[-1] <= 10 * 2.0**-L
    return f, trace


def test_example_one_small():
    """Test sin(x2) is recovered to the grid spacing with the rank bound held"""
    _check_example(example_one(8), 8)


@pytest.mark.slow
@pytest.mark.parametrize("L", [10, 12])
def test_example_one_finer(L):
    _check_example(example_one(L), L)


@pytest.mark.slow
def test_example_two_learned_kernel():
    """Test the cross-interpolated kernel and source at chi <= 10"""
    instance = example_two(10)
    assert instance.problem.kernel_net.max_bond <= 10
    assert instance.problem.g_net.max_bond <= 10
    _check_example(instance, 10)


def test_linear_constant_problem():
    """Test f = 1 + f/2 with a unit kernel converges to 2"""
    tx = named_tree("comb", 2, 4)
    kernel = build_constant(build_doubled_tree(tx), 1.0)
    problem = FredholmProblem(build_constant(tx, 1.0), kernel, alpha=1, lam=0.5, n_iters=40)
    f, trace = solve(problem, build_constant(tx, 1.0), stop_factor=1e-3)
    assert trace.converged
    assert not trace.diverging
    np.testing.assert_allclose(evaluate_batch(f, all_bit_rows(tx)), 2.0, atol=1e-2)
    assert np.isnan(trace.errors[0])


def test_zero_kernel_returns_source():
    tx = named_tree("path-interleaved", 2, 3)
    kernel = build_constant(build_doubled_tree(tx), 0.0)
    g = build_constant(tx, 0.75)
    f = apply_map(FredholmProblem(g, kernel), build_constant(tx, 5.0))
    np.testing.assert_allclose(evaluate_batch(f, all_bit_rows(tx)), 0.75, atol=1e-12)


def test_quadratic_growth_is_flagged():
    """Test a blowing-up iteration f -> 1 + f^2 trips the divergence flag"""
    tx = named_tree("comb", 1, 3)
    kernel = build_constant(build_doubled_tree(tx), 1.0)
    problem = FredholmProblem(build_constant(tx, 1.0), kernel, alpha=2, n_iters=6)
    _, trace = solve(problem, build_constant(tx, 1.0), samples=samples_for(tx, 8, 0))
    assert trace.diverging
    assert not trace.converged


def test_iterate_on_wrong_tree():
    tx = named_tree("comb", 2, 2)
    problem = FredholmProblem(build_constant(tx, 1.0), build_constant(build_doubled_tree(tx), 1.0))
    with pytest.raises(TreeMismatch):
        apply_map(problem, build_constant(named_tree("star", 2, 2), 1.0))


def _scripted_map(tx, values):
    """apply_map stand-in returning constant iterates with the given values"""
    remaining = iter(values)
    return lambda problem, f: build_constant(tx, next(remaining))


@pytest.mark.parametrize(
    "values, converged, diverging",
    [
        ([1.1, 1.3, 1.7, 2.5, 2.5], True, False),
        ([1.1, 1.3, 1.7, 2.5, 4.0, 7.0], False, True),
    ],
)
def test_growth_streak_then_settling(monkeypatch, values, converged, diverging):
    """Test a growth streak only stands as divergence when the run never settles"""
    tx = named_tree("comb", 1, 3)
    problem = FredholmProblem(
        build_constant(tx, 1.0), build_constant(build_doubled_tree(tx), 1.0), n_iters=len(values)
    )
    monkeypatch.setattr(solver_module, "apply_map", _scripted_map(tx, values))
    _, trace = solve(problem, build_constant(tx, 1.0), samples=samples_for(tx, 8, 0))
    assert trace.converged is converged
    assert trace.diverging is diverging
    assert trace.iterations == len(values)


def test_exact_solution_is_a_fixed_point():
    """Test one map application keeps sin(x2) to within the grid spacing"""
    L = 8
    instance = example_one(L)
    exact = build_polynomial(instance.problem.x_tree, PolynomialSpec(tuple(sin_taylor()), 2))
    samples = samples_for(instance.problem.x_tree, 200, 3)
    eps_before, _ = error_metrics(exact, instance.reference, samples)
    eps_after, _ = error_metrics(apply_map(instance.problem, exact), instance.reference, samples)
    assert eps_before <= 1e-12
    assert eps_after <= 2.0**-L
