"""Formal power series truncated at a fixed order.

Coefficients may be exact rationals or :class:`UniPoly` values (series
over ``Q[alpha]``); the only operations needed from the coefficient ring
are ``+``, ``-``, ``*`` and division by a nonzero integer.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from stirkit.config import check_cap
from stirkit.poly import UniPoly


class TruncatedSeries:
    """Coefficients ``c_0..c_K`` of a power series, exact up to order ``K``."""

    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs: Sequence, order: int):
        cs = [Fraction(c) if isinstance(c, int) else c for c in list(coeffs)[: order + 1]]
        zero = Fraction(0)
        cs += [zero] * (order + 1 - len(cs))
        self.order = order
        self.coeffs = tuple(cs)

    @classmethod
    def log_reciprocal_over_u(cls, order: int) -> "TruncatedSeries":
        """``(1/u) * ln(1/(1-u)) = 1 + u/2 + u^2/3 + ...``"""
        return cls([Fraction(1, j + 1) for j in range(order + 1)], order)

    def __getitem__(self, k):
        return self.coeffs[k]

    def __len__(self):
        return self.order + 1

    def _check(self, other):
        if not isinstance(other, TruncatedSeries) or other.order != self.order:
            raise ValueError("series must share a truncation order")

    def __add__(self, other):
        self._check(other)
        return TruncatedSeries([a + b for a, b in zip(self.coeffs, other.coeffs)], self.order)

    def __sub__(self, other):
        self._check(other)
        return TruncatedSeries([a - b for a, b in zip(self.coeffs, other.coeffs)], self.order)

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            return TruncatedSeries([other * c for c in self.coeffs], self.order)
        self._check(other)
        a, b = self.coeffs, other.coeffs
        out = []
        for k in range(self.order + 1):
            acc = Fraction(0)
            for j in range(k + 1):
                acc = acc + a[j] * b[k - j]
            out.append(acc)
        return TruncatedSeries(out, self.order)

    __rmul__ = __mul__

    def derivative_coeffs(self):
        """Coefficients of ``u * d/du`` applied to the series: ``k*c_k``."""
        return [k * c for k, c in enumerate(self.coeffs)]

    def log(self) -> "TruncatedSeries":
        """Series logarithm; requires constant term 1."""
        a = self.coeffs
        if a[0] != 1:
            raise ValueError("log needs a series with constant term 1")
        # k*b_k = k*a_k - sum_{j=1}^{k-1} j*b_j*a_{k-j}
        b = [Fraction(0)] * (self.order + 1)
        for k in range(1, self.order + 1):
            acc = k * a[k]
            for j in range(1, k):
                acc = acc - j * b[j] * a[k - j]
            b[k] = acc / k
        return TruncatedSeries(b, self.order)

    def exp(self) -> "TruncatedSeries":
        """Series exponential; requires constant term 0."""
        b = self.coeffs
        if b[0] != 0:
            raise ValueError("exp needs a series with constant term 0")
        e = [Fraction(1)] + [Fraction(0)] * self.order
        for k in range(1, self.order + 1):
            acc = Fraction(0)
            for j in range(1, k + 1):
                acc = acc + j * b[j] * e[k - j]
            e[k] = acc / k
        return TruncatedSeries(e, self.order)

    def power(self, exponent) -> "TruncatedSeries":
        """``self ** exponent`` for constant term 1; exponent may be a UniPoly."""
        return (self.log() * exponent).exp()

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.order == other.order and all(
            a == b for a, b in zip(self.coeffs, other.coeffs)
        )

    def __repr__(self):
        return f"TruncatedSeries({list(self.coeffs)!r}, order={self.order})"


def alpha_power_of_log_series(order: int) -> TruncatedSeries:
    """``((1/u) ln(1/(1-u)))^(-alpha)`` with coefficients in ``Q[alpha]``."""
    check_cap("SERIES_CAP", order, "symbolic series order")
    base = TruncatedSeries.log_reciprocal_over_u(order)
    out = base.power(UniPoly([0, -1]))
    return TruncatedSeries([c if isinstance(c, UniPoly) else UniPoly.constant(c) for c in out.coeffs], order)


def log_series_power_coefficients(alpha):
    """Yield the coefficients of ``((1/u) ln(1/(1-u)))^(-alpha)`` one at a time, exactly.

    Uses the power recurrence b_k = (1/k) sum_{j=1}^k ((p+1)j - k) a_j b_{k-j}
    with p = -alpha and a_j = 1/(j+1), so later terms never redo earlier work.
    """
    p = -Fraction(alpha)
    b = [Fraction(1)]
    yield b[0]
    k = 0
    while True:
        k += 1
        acc = Fraction(0)
        for j in range(1, k + 1):
            acc += ((p + 1) * j - k) * b[k - j] / (j + 1)
        b.append(acc / k)
        yield b[k]


def numeric_power_of_log_series(alpha, order: int) -> TruncatedSeries:
    """Same series at a fixed exact rational ``alpha`` (no symbolic cap)."""
    base = TruncatedSeries.log_reciprocal_over_u(order)
    return base.power(-Fraction(alpha))
