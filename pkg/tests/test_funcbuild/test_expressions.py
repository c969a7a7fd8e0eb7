"""
Test suite for builder expressions
"""

import numpy as np
import pytest

from src.funcbuild.elementary import ElementarySpec
from src.funcbuild.expressions import build_composite, build_expression, parse_expression
from src.funcbuild.polynomial import PolynomialSpec
from src.topology.encoding import all_bit_rows, bits_to_coordinates
from src.topology.generators import named_tree
from src.topology.tree import DigitId
from src.ttn.network import evaluate_batch
from src.utils.errors import ConfigError


def test_parse_elementary():
    spec = parse_expression("exponential:c=2,k=1;-1,a=0.5")
    assert spec == ElementarySpec("exponential", c=2.0, a=0.5, k=(1.0, -1.0))
    assert parse_expression("sinh:k=1j").k == (1j,)
    assert parse_expression("delta:x=0.25;0.5").point == (0.25, 0.5)


def test_parse_polynomial():
    spec = parse_expression("polynomial:coeffs=1;0;-0.5,var=2,root=2.3")
    assert isinstance(spec, PolynomialSpec)
    assert spec.coefficients == (1.0, 0.0, -0.5)
    assert spec.target_variable == 2
    assert spec.root_digit == DigitId(2, 3)


@pytest.mark.parametrize(
    "text",
    [
        "gaussian:c=1",
        "constant:q=3",
        "constant:c",
        "constant:c=abc",
        "polynomial:var=1",
        "delta:",
    ],
)
def test_parse_errors(text):
    with pytest.raises(ConfigError):
        parse_expression(text)


def test_build_expression_constant():
    tree = named_tree("comb", 2, 3)
    net = build_expression("constant:c=1", tree)
    assert net.max_bond == 1
    np.testing.assert_allclose(evaluate_batch(net, all_bit_rows(tree)), 1.0)


def test_composite_sum_of_products():
    """Test x1 * x2 - 1 with bonds following the algebra rules"""
    tree = named_tree("path-interleaved", 2, 4)
    net = build_composite("polynomial:coeffs=0;1,var=1 * polynomial:coeffs=0;1,var=2 + constant:c=-1", tree)
    rows = all_bit_rows(tree)
    x = bits_to_coordinates(tree, rows)
    np.testing.assert_allclose(evaluate_batch(net, rows), x[:, 0] * x[:, 1] - 1.0, atol=1e-12)
    # (2 * 2) + 1
    assert net.max_bond == 5


def test_composite_empty_factor():
    with pytest.raises(ConfigError):
        build_composite("constant:c=1 *  * constant:c=2", named_tree("comb", 1, 2))
