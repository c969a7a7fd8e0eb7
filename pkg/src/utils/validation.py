"""
TreeTen - Input Validation Utilities
"""

import math
import re

_DIGIT_LABEL = re.compile(r"^\s*(\d+)\.(\d+)\s*$")
_EXPRESSION_KIND = re.compile(r"^[a-z][a-z0-9_-]*$")


def validate_digit_label(label: str) -> bool:
    """Validate digit label format "i.j" (e.g. 1.1, 2.16)"""
    m = _DIGIT_LABEL.match(label)
    return bool(m) and int(m.group(1)) >= 1 and int(m.group(2)) >= 1


def parse_digit_label(label: str) -> tuple:
    """Split "i.j" into (i, j); raises ValueError on malformed labels"""
    m = _DIGIT_LABEL.match(label)
    if not m or not validate_digit_label(label):
        raise ValueError(f"malformed digit label {label!r}, expected 'i.j'")
    return int(m.group(1)), int(m.group(2))


def validate_expression_kind(kind: str) -> bool:
    """Validate builder/target kind names (lowercase, dashes allowed)"""
    return bool(_EXPRESSION_KIND.match(kind))


def is_finite_scalar(value) -> bool:
    """True for finite real or complex numbers"""
    try:
        c = complex(value)
    except (TypeError, ValueError):
        return False
    return math.isfinite(c.real) and math.isfinite(c.imag)
