"""
TreeTen - Builder expressions

    constant:c=2.5
    exponential:c=1,k=1;-1,a=0
    cosh:k=1            sinh:c=2,k=0.5
    delta:x=0.25;0.5
    polynomial:coeffs=1;0;-0.5,var=1,root=1.3

Lists are ';'-separated; numbers accept Python complex syntax ("1j", "0.5+2j").
Terms combine with " + " and factors with " * " (spaces required):

    polynomial:coeffs=0;1,var=1 * polynomial:coeffs=0;1,var=3 + constant:c=-1
"""

from __future__ import annotations

import logging
from typing import Dict, List, Union

from src.funcbuild.elementary import ElementarySpec, Number
from src.funcbuild.polynomial import PolynomialSpec, build_polynomial
from src.topology.tree import DigitId, LabeledTree
from src.ttn.algebra import add, multiply
from src.ttn.network import TreeTensorNetwork
from src.utils.errors import ConfigError
from src.utils.validation import validate_expression_kind

logger = logging.getLogger(__name__)

ELEMENTARY_KINDS = ("constant", "exponential", "delta", "cosh", "sinh")
EXPRESSION_KINDS = ELEMENTARY_KINDS + ("polynomial",)

_ALLOWED_KEYS = {
    "constant": {"c"},
    "exponential": {"c", "k", "a"},
    "cosh": {"c", "k", "a"},
    "sinh": {"c", "k", "a"},
    "delta": {"x"},
    "polynomial": {"coeffs", "var", "root"},
}


def _number(raw: str) -> Number:
    raw = raw.strip()
    try:
        if "j" in raw:
            return complex(raw.replace(" ", ""))
        return float(raw)
    except ValueError:
        raise ConfigError(f"not a number: {raw!r}") from None


def _numbers(raw: str) -> List[Number]:
    return [_number(p) for p in raw.split(";") if p.strip()]


def parse_expression(text: str) -> Union[ElementarySpec, PolynomialSpec]:
    kind, _, body = text.strip().partition(":")
    kind = kind.strip().lower()
    if not validate_expression_kind(kind) or kind not in EXPRESSION_KINDS:
        raise ConfigError(f"unknown builder kind {kind!r}, expected one of {list(EXPRESSION_KINDS)}")

    params: Dict[str, str] = {}
    for item in filter(None, (p.strip() for p in body.split(","))):
        key, sep, value = item.partition("=")
        if not sep:
            raise ConfigError(f"expected key=value in {item!r}")
        key = key.strip().lower()
        if key not in _ALLOWED_KEYS[kind]:
            raise ConfigError(f"{kind} does not take parameter {key!r}")
        params[key] = value

    if kind == "polynomial":
        if "coeffs" not in params:
            raise ConfigError("polynomial needs coeffs=c0;c1;...")
        var = int(_number(params.get("var", "1")).real)
        root = DigitId.parse(params["root"].strip()) if "root" in params else None
        return PolynomialSpec(tuple(_numbers(params["coeffs"])), var, root)

    if kind == "delta":
        if "x" not in params:
            raise ConfigError("delta needs x=x1;x2;...")
        return ElementarySpec("delta", point=tuple(float(v.real) for v in map(complex, _numbers(params["x"]))))

    c = _number(params.get("c", "1"))
    a = _number(params.get("a", "0"))
    k = tuple(_numbers(params.get("k", "0" if kind == "constant" else "1")))
    return ElementarySpec(kind, c=c, a=a, k=k)


def build_expression(text: str, tree: LabeledTree) -> TreeTensorNetwork:
    spec = parse_expression(text)
    logger.debug(f"building {text!r} on {len(tree.vertices)} digits")
    if isinstance(spec, PolynomialSpec):
        return build_polynomial(tree, spec)
    return spec.build(tree)


def build_composite(text: str, tree: LabeledTree) -> TreeTensorNetwork:
    """Sum of products of builder expressions. Bonds add and multiply accordingly."""
    total = None
    for term in text.split(" + "):
        product = None
        for factor in term.split(" * "):
            if not factor.strip():
                raise ConfigError(f"empty factor in {text!r}")
            net = build_expression(factor, tree)
            product = net if product is None else multiply(product, net)
        total = product if total is None else add(total, product)
    return total
