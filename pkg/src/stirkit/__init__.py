"""Exact Stirling numbers, Iverson-bracket sums, factorial powers and their oracles."""

from stirkit.errors import (
    CapExceeded,
    DomainError,
    ParseError,
    PoleError,
    StirkitError,
    SupportError,
    UnboundVariable,
    UnknownIdentity,
)
from stirkit.numbers import (
    TableWindow,
    binomial,
    factorial,
    stirling_cycle,
    stirling_subset,
    table_window,
)
from stirkit.poly import UniPoly

__version__ = "0.1.0"

__all__ = [
    "CapExceeded",
    "DomainError",
    "ParseError",
    "PoleError",
    "StirkitError",
    "SupportError",
    "TableWindow",
    "UnboundVariable",
    "UniPoly",
    "UnknownIdentity",
    "binomial",
    "factorial",
    "stirling_cycle",
    "stirling_subset",
    "table_window",
]
