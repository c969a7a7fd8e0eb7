"""
TreeTen - CLI commands

Each command turns a validated RunConfig into result tables (plus saved
networks); run_command writes them under config.out together with a JSON
metadata sidecar.
"""

from __future__ import annotations

import dataclasses
import logging
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, List, Tuple

from src.analysis.metrics import error_metrics, samples_for
from src.analysis.mutual_information import mi_matrix
from src.benchmarks.targets import FREDHOLM_INSTANCES
from src.cli.config import FredholmDocument, RunConfig
from src.cli.output import Table, write_metadata, write_table
from src.cli.runner import Job, run_jobs
from src.cli.targets import (
    DEFAULT_TCI_CHI,
    require_network,
    resolve_function,
    resolve_target,
    resolve_tree,
)
from src.fredholm.examples import FredholmInstance, example_one, example_two
from src.fredholm.problem import FredholmProblem, build_doubled_tree
from src.fredholm.solver import TRACE_SAMPLES, solve
from src.funcbuild.elementary import build_constant
from src.funcbuild.expressions import build_composite
from src.topology.tree import LabeledTree
from src.treeci.learn import tci_learn
from src.ttn.network import TreeTensorNetwork, stats
from src.ttn.storage import save_network
from src.ttn.truncation import truncate
from src.utils.config import get_settings
from src.utils.errors import ConfigError

logger = logging.getLogger(__name__)


@dataclass
class CommandResult:
    tables: List[Table] = field(default_factory=list)
    artifacts: List[Path] = field(default_factory=list)
    metadata: Dict[str, Any] = field(default_factory=dict)


def _sample_count(config: RunConfig, default: int) -> int:
    return config.samples if config.samples is not None else default


# ---------- build ----------

def cmd_build(config: RunConfig) -> CommandResult:
    resolved = resolve_target(config)
    net = require_network(resolved, "build")
    s = stats(net)
    path = save_network(net, config.out_dir / "build.npz")
    table = Table(
        "build",
        ("target", "n_digits", "max_bond", "memory_bytes"),
        [(resolved.name, len(net.tree.vertices), s.max_bond, s.memory_bytes)],
    )
    bonds = Table("build_bonds", ("bond", "dim"), sorted(s.per_edge_bonds.items()))
    return CommandResult([table, bonds], [path], {"target": resolved.metadata})


# ---------- compress ----------

def cmd_compress(config: RunConfig) -> CommandResult:
    resolved = resolve_target(config)
    net = require_network(resolved, "compress")
    samples = samples_for(resolved.tree, _sample_count(config, get_settings().default_samples), config.seed)
    chis = sorted(config.chi_list or range(1, net.max_bond + 1), reverse=True)

    def point(chi: int) -> Tuple[int, float, float, int]:
        approx = truncate(net, chi, 0.0)
        eps, eps_inf = error_metrics(approx, resolved.function, samples)
        return chi, eps, eps_inf, stats(approx).memory_bytes

    rows = run_jobs([Job(i, f"compress chi={chi}", lambda chi=chi: point(chi)) for i, chi in enumerate(chis)])
    table = Table("compress", ("chi", "eps", "eps_inf", "memory_bytes"), rows)
    return CommandResult([table], [], {"target": resolved.metadata, "exact_max_bond": net.max_bond})


# ---------- tci ----------

def cmd_tci(config: RunConfig) -> CommandResult:
    if config.target.startswith("tci:"):
        config = config.model_copy(update={"target": config.target[len("tci:"):]})
    resolved = resolve_target(config, with_exact=False)
    tree = resolved.tree
    samples = samples_for(tree, _sample_count(config, get_settings().default_samples), config.seed)
    chis = config.chi_list or get_settings().chi_list_values or [DEFAULT_TCI_CHI]

    def point(chi: int):
        net, report = tci_learn(resolved.function, tree, chi, config.tol, config.sweeps)
        eps, eps_inf = error_metrics(net, resolved.function, samples)
        return net, report, eps, eps_inf

    results = run_jobs([Job(i, f"tci chi={chi}", lambda chi=chi: point(chi)) for i, chi in enumerate(chis)])

    sweeps = Table("tci", ("chi_max", "sweep", "eps_inf", "chi", "calls"))
    summary = Table("tci_summary", ("chi_max", "eps", "eps_inf", "max_bond", "memory_bytes", "calls"))
    artifacts = []
    for chi, (net, report, eps, eps_inf) in zip(chis, results):
        sweeps.rows.extend((chi,) + row for row in report.rows())
        summary.rows.append((chi, eps, eps_inf, net.max_bond, stats(net).memory_bytes, report.calls[-1]))
        artifacts.append(save_network(net, config.out_dir / f"tci_chi{chi}.npz"))
    return CommandResult([sweeps, summary], artifacts, {"target": resolved.metadata})


# ---------- fredholm ----------

def _fredholm_piece(text: str, tree: LabeledTree, doc: FredholmDocument) -> TreeTensorNetwork:
    kind, _, body = text.partition(":")
    if kind == "direct":
        return build_composite(body, tree)
    net, report = tci_learn(resolve_function(body), tree, doc.tci_chi, doc.tci_tol, doc.tci_sweeps)
    logger.info(f"📐 learned {body} at chi={net.max_bond} (eps_inf {report.sweep_errors[-1]:.1e})")
    return net


def _custom_instance(config: RunConfig) -> FredholmInstance:
    doc = config.fredholm
    tx = resolve_tree(config, doc.n_variables)
    kernel = _fredholm_piece(doc.kernel, build_doubled_tree(tx), doc)
    g = _fredholm_piece(doc.source, tx, doc)
    chi_max = max(config.chi_list) if config.chi_list else None
    problem = FredholmProblem(
        g, kernel, alpha=doc.alpha, lam=doc.lam, n_iters=config.iters, chi_max=chi_max,
        tol=config.tol, power_tol=get_settings().power_tol,
    )
    reference = resolve_function(doc.reference) if doc.reference else None
    return FredholmInstance("custom", problem, build_constant(tx, 1.0), reference)


def _named_instance(config: RunConfig) -> FredholmInstance:
    if config.tree_spec is not None:
        raise ConfigError("the worked Fredholm instances take a named --tree, not --tree-spec")
    tree_name = config.tree or "coupled-binary"
    chi_max = max(config.chi_list) if config.chi_list else None
    if config.target == "fredholm-ex1":
        instance = example_one(config.L, tree_name, config.iters, chi_max)
    else:
        instance = example_two(config.L, tree_name, config.iters, chi_max=chi_max)
    problem = dataclasses.replace(instance.problem, tol=config.tol, power_tol=get_settings().power_tol)
    return dataclasses.replace(instance, problem=problem)


def cmd_fredholm(config: RunConfig) -> CommandResult:
    if config.target == "custom":
        instance = _custom_instance(config)
    elif config.target in FREDHOLM_INSTANCES:
        instance = _named_instance(config)
    else:
        raise ConfigError(f"fredholm expects one of {list(FREDHOLM_INSTANCES)} or 'custom', got {config.target!r}")

    tree = instance.problem.x_tree
    samples = samples_for(tree, _sample_count(config, TRACE_SAMPLES), config.seed)
    f, trace = solve(instance.problem, instance.f1, instance.reference, samples=samples, seed=config.seed)

    table = Table(
        "fredholm",
        ("iteration", "eps", "eps_inf", "chi", "change", "rank_bound_ok"),
        [
            (k + 1, e, e_inf, chi, change, ok)
            for k, (e, e_inf, chi, change, ok) in enumerate(
                zip(trace.errors, trace.max_errors, trace.max_bonds, trace.changes, trace.rank_bound_ok)
            )
        ],
    )
    path = save_network(f, config.out_dir / "fredholm.npz")
    meta = {
        "instance": instance.name,
        "alpha": instance.problem.alpha,
        "chi_g": instance.problem.g_net.max_bond,
        "chi_kernel": instance.problem.kernel_net.max_bond,
        "converged": trace.converged,
        "diverging": trace.diverging,
    }
    return CommandResult([table], [path], meta)


# ---------- mi ----------

def cmd_mi(config: RunConfig) -> CommandResult:
    resolved = resolve_target(config, with_exact=False)
    tree = resolved.tree
    n_samples = _sample_count(config, get_settings().mi_samples)
    matrix = mi_matrix(resolved.function, tree, n_samples, config.seed, exact=config.exact)
    labels = [v.label for v in tree.vertices]
    rows = [[label] + [float(m) for m in matrix[i]] for i, label in enumerate(labels)]
    table = Table("mi", tuple(["digit"] + labels), rows)
    pairs = Table(
        "mi_pairs",
        ("digit_a", "digit_b", "M"),
        [(labels[i], labels[j], float(matrix[i, j])) for i in range(len(labels)) for j in range(i + 1, len(labels))],
    )
    return CommandResult([table, pairs], [], {"target": resolved.metadata, "samples": n_samples, "exact": config.exact})


COMMANDS: Dict[str, Callable[[RunConfig], CommandResult]] = {
    "build": cmd_build,
    "compress": cmd_compress,
    "tci": cmd_tci,
    "fredholm": cmd_fredholm,
    "mi": cmd_mi,
}


def run_command(config: RunConfig) -> CommandResult:
    """Run one command and write its tables and metadata under config.out."""
    t0 = time.perf_counter()
    logger.info(f"▶️ {config.command} target={config.target} L={config.L} tree={config.tree_spec or config.tree or 'default'}")
    result = COMMANDS[config.command](config)

    digest = config.config_hash()
    written = [write_table(config.out_dir, table, digest) for table in result.tables]
    metadata = {
        "command": config.command,
        "config": config.model_dump(mode="json"),
        "config_hash": digest,
        "elapsed_ms": int((time.perf_counter() - t0) * 1000),
        "files": [p.name for p in written + result.artifacts],
        **result.metadata,
    }
    write_metadata(config.out_dir, config.command, metadata)
    return result
