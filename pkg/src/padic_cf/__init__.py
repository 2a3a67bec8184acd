"""Exact p-adic continued fractions: Browkin I, Browkin II and the sign-free variants."""

__version__ = "0.1.0"

from .algorithms import AlgorithmKind, ExpansionResult, Status, expand, step  # noqa: E402
from .errors import (  # noqa: E402
    ImpossibleStateError,
    InvariantViolation,
    NotAResidueError,
    TerminatedExpansionError,
)
from .quadratic import DigitWindow, FloorKind, PartialQuotient, QuadElem  # noqa: E402

__all__ = [
    "AlgorithmKind",
    "DigitWindow",
    "ExpansionResult",
    "FloorKind",
    "ImpossibleStateError",
    "InvariantViolation",
    "NotAResidueError",
    "PartialQuotient",
    "QuadElem",
    "Status",
    "TerminatedExpansionError",
    "expand",
    "step",
]
