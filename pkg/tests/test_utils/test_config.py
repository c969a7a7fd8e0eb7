"""
Test suite for settings, validation helpers and the error hierarchy
"""

import pytest

from src.utils.config import get_settings, parse_int_list, reset_settings
from src.utils.errors import (
    EXIT_CONFIG,
    EXIT_NUMERICAL,
    CycleDetected,
    DegenerateInit,
    InsufficientSamples,
    SvdFailure,
    TreetenError,
    exit_code_for,
)
from src.utils.validation import is_finite_scalar, parse_digit_label, validate_digit_label


def test_settings_defaults(clean_settings, monkeypatch):
    """Test defaults when no TREETEN_* variables are set"""
    for name in ("TREETEN_THREADS", "TREETEN_DEFAULT_TOL", "TREETEN_MI_SAMPLES", "TREETEN_CHI_LIST"):
        monkeypatch.delenv(name, raising=False)
    reset_settings()
    s = get_settings()
    assert s.threads == 4
    assert s.default_tol == 1e-12
    assert s.mi_samples == 10_000
    assert s.chi_list_values == []


def test_settings_from_environment(clean_settings, monkeypatch):
    """Test that environment variables override defaults"""
    monkeypatch.setenv("TREETEN_THREADS", "2")
    monkeypatch.setenv("TREETEN_CHI_LIST", "[1, 2, 8]")
    reset_settings()
    s = get_settings()
    assert s.threads == 2
    assert s.chi_list_values == [1, 2, 8]


def test_settings_singleton(clean_settings):
    """Test get_settings caches until reset"""
    assert get_settings() is get_settings()


def test_parse_int_list_formats():
    """Test comma separated and JSON list forms"""
    assert parse_int_list("1,2, 4") == [1, 2, 4]
    assert parse_int_list("[3, 5]") == [3, 5]
    assert parse_int_list("7") == [7]


def test_digit_labels():
    """Test 'i.j' label validation"""
    assert validate_digit_label("1.1")
    assert validate_digit_label("12.16")
    assert not validate_digit_label("0.1")
    assert not validate_digit_label("1-1")
    assert parse_digit_label(" 2.3 ") == (2, 3)
    with pytest.raises(ValueError):
        parse_digit_label("a.b")


def test_is_finite_scalar():
    assert is_finite_scalar(1.5)
    assert is_finite_scalar(1 + 2j)
    assert not is_finite_scalar(float("nan"))
    assert not is_finite_scalar(complex(0, float("inf")))
    assert not is_finite_scalar("x")


def test_exit_codes():
    """Test numerical failures map to 3, everything else to 2"""
    assert exit_code_for(CycleDetected("loop")) == EXIT_CONFIG
    assert exit_code_for(SvdFailure("no")) == EXIT_NUMERICAL
    assert exit_code_for(DegenerateInit("zero")) == EXIT_NUMERICAL
    assert exit_code_for(InsufficientSamples("few")) == EXIT_NUMERICAL
    assert issubclass(CycleDetected, TreetenError)
    assert issubclass(CycleDetected, ValueError)
