"""
TreeTen - Named benchmark targets

Each target is a vectorized function of unit-cube coordinates (m, n) plus,
where one exists, an exact network construction on any tree.
"""

from __future__ import annotations

import json
import logging
import math
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Any, Callable, Dict, Optional

import numpy as np

from src.fredholm.examples import example_two_solution
from src.funcbuild.elementary import build_exponential, build_hyperbolic
from src.funcbuild.polynomial import PolynomialSpec, build_polynomial
from src.topology.tree import LabeledTree
from src.ttn.algebra import add, imag_part, real_part
from src.ttn.network import TreeTensorNetwork
from src.utils.errors import ConfigError

logger = logging.getLogger(__name__)

DATA_DIR = Path(__file__).parent / "data"

LAGUERRE_DEGREE = 40
WEIERSTRASS_A = 3
WEIERSTRASS_TERMS = 25


@dataclass(frozen=True)
class BenchmarkInstance:
    name: str
    n_variables: int
    function: Callable[[np.ndarray], np.ndarray]
    exact: Optional[Callable[[LabeledTree], TreeTensorNetwork]] = None
    default_tree: str = "path-sequential"
    metadata: Dict[str, Any] = field(default_factory=dict)


def _load(name: str) -> Dict[str, Any]:
    return json.loads((DATA_DIR / f"{name}.json").read_text(encoding="utf-8"))


def _sum_networks(nets) -> TreeTensorNetwork:
    out = None
    for net in nets:
        out = net if out is None else add(out, net)
    return out


# ---------- Laguerre L_40 ----------

def laguerre_coefficients(n: int = LAGUERRE_DEGREE):
    return tuple(math.comb(n, k) * (-1) ** k / math.factorial(k) for k in range(n + 1))


def laguerre() -> BenchmarkInstance:
    spec = PolynomialSpec(laguerre_coefficients())
    return BenchmarkInstance(
        name="laguerre",
        n_variables=1,
        function=lambda x: spec.horner(x[:, 0]),
        exact=lambda tree: build_polynomial(tree, spec),
        metadata={"degree": LAGUERRE_DEGREE},
    )


# ---------- Weierstrass ----------

def weierstrass() -> BenchmarkInstance:
    freqs = math.pi * np.arange(1, WEIERSTRASS_TERMS + 1, dtype=float) ** WEIERSTRASS_A

    def function(x: np.ndarray) -> np.ndarray:
        return (np.sin(np.outer(x[:, 0], freqs)) / freqs).sum(axis=1)

    def exact(tree: LabeledTree) -> TreeTensorNetwork:
        # sin(w x) / w = Im exp(i w x) / w
        waves = [build_exponential(tree, complex(1.0 / w), [1j * w]) for w in freqs]
        return imag_part(_sum_networks(waves))

    return BenchmarkInstance(
        "weierstrass", 1, function, exact,
        metadata={"a": WEIERSTRASS_A, "n_terms": WEIERSTRASS_TERMS},
    )


# ---------- plane waves ----------

@lru_cache(maxsize=1)
def planewave_vectors() -> np.ndarray:
    table = _load("planewaves")
    rng = np.random.default_rng(table["seed"])
    return rng.standard_normal((table["n_terms"], table["n_variables"]))


def _planewave_terms(tree: LabeledTree):
    k = planewave_vectors()
    for j, kj in enumerate(k, start=1):
        yield build_exponential(tree, complex(1.0), list(1j * j * kj))


def planewaves_complex_network(tree: LabeledTree) -> TreeTensorNetwork:
    """Sum of the complex exponentials, bond dimension n_terms."""
    return _sum_networks(_planewave_terms(tree))


def planewaves() -> BenchmarkInstance:
    k = planewave_vectors()
    j = np.arange(1, k.shape[0] + 1)[:, None]

    def function(x: np.ndarray) -> np.ndarray:
        return np.cos(x @ (j * k).T).sum(axis=1)

    table = _load("planewaves")
    return BenchmarkInstance(
        "planewaves", 3, function,
        exact=lambda tree: real_part(planewaves_complex_network(tree)),
        default_tree="coupled-binary",
        metadata={"seed": table["seed"], "n_terms": table["n_terms"]},
    )


def planewaves_complex() -> BenchmarkInstance:
    k = planewave_vectors()
    j = np.arange(1, k.shape[0] + 1)[:, None]

    def function(x: np.ndarray) -> np.ndarray:
        return np.exp(1j * (x @ (j * k).T)).sum(axis=1)

    base = planewaves()
    return BenchmarkInstance(
        "planewaves-complex", 3, function, planewaves_complex_network,
        default_tree="coupled-binary", metadata=dict(base.metadata),
    )


# ---------- multinormal ----------

def multinormal() -> BenchmarkInstance:
    table = _load("multinormal")
    lo, hi = table["domain"]
    mean = np.asarray(table["mean"], dtype=float)
    precision = np.linalg.inv(np.asarray(table["covariance"], dtype=float))

    def function(x: np.ndarray) -> np.ndarray:
        d = lo + (hi - lo) * x - mean
        return np.exp(-np.einsum("mi,ij,mj->m", d, precision, d))

    return BenchmarkInstance(
        "multinormal", 3, function,
        default_tree="comb",
        metadata={"domain": [lo, hi], "coordinate_map": f"r = {lo} + {hi - lo} * x", "mean": table["mean"]},
    )


# ---------- cosh ----------

def cosh() -> BenchmarkInstance:
    return BenchmarkInstance(
        "cosh", 1, lambda x: np.cosh(x.sum(axis=1)),
        exact=lambda tree: build_hyperbolic(tree, 1.0, [1.0] * tree.n_variables, 0.0, "cosh"),
    )


# ---------- Fredholm reference solutions ----------

def fredholm_one() -> BenchmarkInstance:
    return BenchmarkInstance(
        "fredholm-ex1", 2, lambda x: np.sin(x[:, 1]), default_tree="coupled-binary", metadata={"alpha": 3}
    )


def fredholm_two() -> BenchmarkInstance:
    return BenchmarkInstance(
        "fredholm-ex2", 2, example_two_solution, default_tree="coupled-binary", metadata={"alpha": 2}
    )


BENCHMARKS: Dict[str, Callable[[], BenchmarkInstance]] = {
    "laguerre": laguerre,
    "weierstrass": weierstrass,
    "planewaves": planewaves,
    "planewaves-complex": planewaves_complex,
    "multinormal": multinormal,
    "cosh": cosh,
    "fredholm-ex1": fredholm_one,
    "fredholm-ex2": fredholm_two,
}

FREDHOLM_INSTANCES = ("fredholm-ex1", "fredholm-ex2")


def get_benchmark(name: str) -> BenchmarkInstance:
    try:
        return BENCHMARKS[name]()
    except KeyError:
        raise ConfigError(f"unknown target {name!r}, expected one of {sorted(BENCHMARKS)}") from None
