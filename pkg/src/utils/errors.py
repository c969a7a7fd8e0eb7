"""
TreeTen - Exception hierarchy

Every failure the library raises derives from TreetenError so the CLI can map
whole families onto exit codes (config/topology -> 2, numerical -> 3).
"""

from __future__ import annotations


class TreetenError(Exception):
    """Base class for all library errors."""


# --- configuration -----------------------------------------------------------

class ConfigError(TreetenError, ValueError):
    """Invalid run configuration or builder expression."""


# --- topology ----------------------------------------------------------------

class TopologyError(TreetenError, ValueError):
    """Invalid labelled tree or grid point."""


class DisconnectedTree(TopologyError):
    pass


class CycleDetected(TopologyError):
    pass


class DuplicateDigit(TopologyError):
    pass


class MissingDigit(TopologyError):
    pass


class OutOfDomain(TopologyError):
    """Coordinate outside [0, 1)."""


class IncompleteGridPoint(TopologyError):
    pass


class OffGridPoint(TopologyError):
    pass


class LabelCollision(TopologyError):
    pass


# --- tensors / networks --------------------------------------------------------

class TensorError(TreetenError, ValueError):
    pass


class DimensionMismatch(TensorError):
    pass


class EmptyIndexSet(TensorError):
    pass


class NetworkError(TreetenError, ValueError):
    pass


class TreeMismatch(NetworkError):
    """Two networks are not defined over the same labelled tree."""


# --- numerics ------------------------------------------------------------------

class NumericalError(TreetenError, ArithmeticError):
    pass


class SvdFailure(NumericalError):
    pass


class DegenerateInit(NumericalError):
    """The initial network for cross interpolation is identically zero."""


class InsufficientSamples(NumericalError):
    pass


# Exit codes used by the command line front end
EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3


def exit_code_for(exc: BaseException) -> int:
    if isinstance(exc, NumericalError):
        return EXIT_NUMERICAL
    return EXIT_CONFIG
