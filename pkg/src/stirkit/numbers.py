"""Binomial coefficients and Stirling numbers over the whole integer plane.

Nonnegative-quadrant Stirling values come from forward dynamic programming
on the two recurrences::

    cycle(n+1, k)  = n*cycle(n, k) + cycle(n, k-1)
    subset(n+1, k) = k*subset(n, k) + subset(n, k-1)

and the negative quadrant is reached through the duality
``subset(n, k) == cycle(-k, -n)``.  Mixed-sign arguments give 0, except
at the origin where both kinds are 1.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from typing import Tuple

from stirkit.config import check_cap
from stirkit.errors import DomainError

__all__ = [
    "TableWindow",
    "binomial",
    "factorial",
    "stirling_cycle",
    "stirling_subset",
    "table_window",
]


def factorial(n: int) -> int:
    if n < 0:
        raise DomainError(f"factorial of negative integer {n}")
    return math.factorial(n)


def binomial(n: int, k: int) -> int:
    """Binomial coefficient for all integers ``n`` and ``k``.

    Negative upper index follows ``binomial(n, k) == (-1)**k * binomial(k-n-1, k)``;
    a negative lower index always gives 0.
    """
    if k < 0:
        return 0
    if n >= 0:
        return math.comb(n, k) if k <= n else 0
    value = math.comb(k - n - 1, k)
    return -value if k & 1 else value


class _Triangle:
    """Growable table of rows ``0..n`` of a Stirling triangle.

    Rows are tuples, so readers never see a partially built row.  The lock
    only serialises growth; a finished row is never modified.
    """

    def __init__(self, weight):
        self._weight = weight  # multiplier of T(n, k) in T(n+1, k)
        self._rows = [(1,)]
        self._lock = threading.Lock()

    def row(self, n: int) -> Tuple[int, ...]:
        rows = self._rows
        if n < len(rows):
            return rows[n]
        with self._lock:
            while len(self._rows) <= n:
                m = len(self._rows) - 1
                prev = self._rows[m]
                new = [0] * (m + 2)
                for k in range(1, m + 2):
                    left = prev[k] if k <= m else 0
                    new[k] = self._weight(m, k) * left + prev[k - 1]
                self._rows.append(tuple(new))
            return self._rows[n]

    def __call__(self, n: int, k: int) -> int:
        if k > n:
            return 0
        return self.row(n)[k]


_CYCLE = _Triangle(lambda n, k: n)
_SUBSET = _Triangle(lambda n, k: k)


def stirling_cycle(n: int, k: int) -> int:
    """Number of permutations of ``n`` objects with ``k`` cycles, for all integers."""
    if n >= 0 and k >= 0:
        return _CYCLE(n, k)
    if n < 0 and k < 0:
        return _SUBSET(-k, -n)
    return 0


def stirling_subset(n: int, k: int) -> int:
    """Number of partitions of ``n`` objects into ``k`` blocks, for all integers."""
    if n >= 0 and k >= 0:
        return _SUBSET(n, k)
    if n < 0 and k < 0:
        return _CYCLE(-k, -n)
    return 0


_KINDS = {
    "cycle": stirling_cycle,
    "subset": stirling_subset,
    "binomial": binomial,
}


@dataclass(frozen=True)
class TableWindow:
    kind: str
    n_range: Tuple[int, int]
    k_range: Tuple[int, int]
    entries: Tuple[Tuple[int, ...], ...]

    @property
    def n_values(self):
        return range(self.n_range[0], self.n_range[1] + 1)

    @property
    def k_values(self):
        return range(self.k_range[0], self.k_range[1] + 1)

    def entry(self, n: int, k: int) -> int:
        return self.entries[n - self.n_range[0]][k - self.k_range[0]]


def table_window(kind: str, n_range, k_range) -> TableWindow:
    """Rectangular window of a full-plane table, rows by ``n`` and columns by ``k``.

    Both ranges are inclusive ``(lo, hi)`` pairs.  Raises :class:`CapExceeded`
    when the window holds more entries than ``STIRKIT_TABLE_CAP``.
    """
    try:
        fn = _KINDS[kind]
    except KeyError:
        raise DomainError(f"unknown table kind {kind!r}; expected one of {sorted(_KINDS)}") from None
    nlo, nhi = (int(v) for v in n_range)
    klo, khi = (int(v) for v in k_range)
    if nlo > nhi or klo > khi:
        raise DomainError("table ranges must be nonempty")
    check_cap("TABLE_CAP", (nhi - nlo + 1) * (khi - klo + 1), "table window")
    entries = tuple(
        tuple(fn(n, k) for k in range(klo, khi + 1)) for n in range(nlo, nhi + 1)
    )
    return TableWindow(kind, (nlo, nhi), (klo, khi), entries)
