"""
TreeTen - Resolving --target and --tree into a function, a tree and an exact network

Target forms:
    <benchmark>          named benchmark (laguerre, weierstrass, planewaves, ...)
    direct:<expression>  builder expression, see src.funcbuild.expressions
    <expression>         same, when the prefix before ':' is a builder kind and the
                         target is not a bare benchmark name (cosh)
    tci:<benchmark>      learn the benchmark by cross interpolation instead
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Optional

import numpy as np

from src.benchmarks.targets import BENCHMARKS, get_benchmark
from src.cli.config import RunConfig
from src.fredholm.examples import example_two_kernel, example_two_solution, example_two_source
from src.funcbuild.expressions import EXPRESSION_KINDS, build_composite
from src.topology.generators import named_tree
from src.topology.spec_io import load_tree_spec
from src.topology.tree import LabeledTree
from src.treeci.learn import tci_learn
from src.ttn.network import TreeTensorNetwork
from src.utils.errors import ConfigError

logger = logging.getLogger(__name__)

TargetFunction = Callable[[np.ndarray], np.ndarray]

DEFAULT_TREE = "path-sequential"
DEFAULT_TCI_CHI = 10

# function ids usable as "tci:<id>" inside Fredholm config documents
FUNCTIONS: Dict[str, TargetFunction] = {
    "fredholm-ex2-kernel": example_two_kernel,
    "fredholm-ex2-source": example_two_source,
    "fredholm-ex2-solution": example_two_solution,
}


@dataclass(frozen=True)
class ResolvedTarget:
    name: str
    tree: LabeledTree
    function: TargetFunction
    exact: Optional[TreeTensorNetwork] = None
    learned: bool = False
    metadata: Dict[str, Any] = field(default_factory=dict)


def is_expression(target: str) -> bool:
    """Builder expression unless the target is exactly a benchmark name."""
    if target.startswith("direct:"):
        return True
    if target in BENCHMARKS:
        return False
    kind = target.partition(":")[0].strip().lower()
    return kind in EXPRESSION_KINDS


def strip_direct(target: str) -> str:
    return target[len("direct:"):] if target.startswith("direct:") else target


def resolve_tree(config: RunConfig, n_variables: int, default: str = DEFAULT_TREE) -> LabeledTree:
    if config.tree_spec is not None:
        try:
            tree = load_tree_spec(config.tree_spec)
        except OSError as e:
            raise ConfigError(f"cannot read tree spec {config.tree_spec}: {e.strerror}") from e
        if tree.n_variables != n_variables:
            raise ConfigError(f"tree spec has {tree.n_variables} variables, target needs {n_variables}")
        return tree
    return named_tree(config.tree or default, n_variables, config.L)


def resolve_function(name: str) -> TargetFunction:
    """A vectorized function by id: registered helper or benchmark name."""
    if name in FUNCTIONS:
        return FUNCTIONS[name]
    if name in BENCHMARKS:
        return get_benchmark(name).function
    raise ConfigError(f"unknown function id {name!r}, expected one of {sorted(FUNCTIONS) + sorted(BENCHMARKS)}")


def resolve_target(
    config: RunConfig, chi_tci: Optional[int] = None, with_exact: bool = True
) -> ResolvedTarget:
    target = config.target
    if is_expression(target):
        expr = strip_direct(target)
        tree = resolve_tree(config, config.n or 1)
        net = build_composite(expr, tree)
        return ResolvedTarget(expr, tree, net, exact=net, metadata={"expression": expr})

    learn = target.startswith("tci:")
    name = target[len("tci:"):] if learn else target
    bench = get_benchmark(name)
    if config.n is not None and config.n != bench.n_variables:
        raise ConfigError(f"{name} has {bench.n_variables} variables, got --n {config.n}")
    tree = resolve_tree(config, bench.n_variables, bench.default_tree)
    metadata = dict(bench.metadata)

    if learn:
        chi = chi_tci or max(config.chi_list, default=DEFAULT_TCI_CHI)
        net, report = tci_learn(bench.function, tree, chi, config.tol, config.sweeps)
        metadata.update(tci_chi=chi, tci_eps_inf=report.sweep_errors[-1], tci_calls=report.calls[-1])
        return ResolvedTarget(name, tree, bench.function, exact=net, learned=True, metadata=metadata)

    exact = bench.exact(tree) if with_exact and bench.exact is not None else None
    return ResolvedTarget(name, tree, bench.function, exact=exact, metadata=metadata)


def require_network(resolved: ResolvedTarget, command: str) -> TreeTensorNetwork:
    if resolved.exact is None:
        raise ConfigError(
            f"'{resolved.name}' has no direct construction; use --target tci:{resolved.name} for {command}"
        )
    return resolved.exact
