"""Stirling numbers as polynomials in the upper index, and Kramp's formulas.

``cycle_poly(k)`` is the degree-2k polynomial g_k with g_k(n) = cycle(n, n-k)
for every integer n; ``subset_poly(k)`` is f_k with f_k(n) = subset(n+k, n).
Both are built by exact interpolation of the integer tables.  Kramp's
partition sums ``kramp_C``/``kramp_Gamma`` are computed independently from
binomial polynomials, so their agreement with the tables is a real check.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import List, Tuple

from stirkit.config import check_cap
from stirkit.errors import DomainError
from stirkit.numbers import stirling_cycle, stirling_subset
from stirkit.poly import UniPoly

PartitionVector = Tuple[int, ...]


def _nonneg(k):
    if k < 0:
        raise DomainError(f"k must be nonnegative, got {k}")


@lru_cache(maxsize=None)
def cycle_poly(k: int) -> UniPoly:
    """g_k(n) = cycle(n, n-k), interpolated at n = 0..2k and validated at n = -1..-2k."""
    _nonneg(k)
    nodes = range(2 * k + 1)
    p = UniPoly.interpolate(list(nodes), [stirling_cycle(n, n - k) for n in nodes])
    for n in range(-1, -2 * k - 1, -1):
        if p(n) != stirling_cycle(n, n - k):
            raise AssertionError(f"cycle_poly({k}) disagrees with the table at n = {n}")
    return p


@lru_cache(maxsize=None)
def subset_poly(k: int) -> UniPoly:
    """f_k(n) = subset(n+k, n), interpolated at n = 0..2k and validated at n = -1..-2k."""
    _nonneg(k)
    nodes = range(2 * k + 1)
    p = UniPoly.interpolate(list(nodes), [stirling_subset(n + k, n) for n in nodes])
    for n in range(-1, -2 * k - 1, -1):
        if p(n) != stirling_subset(n + k, n):
            raise AssertionError(f"subset_poly({k}) disagrees with the table at n = {n}")
    return p


def subset_diagonal_poly(k: int) -> UniPoly:
    """The polynomial alpha -> subset(alpha, alpha - k), i.e. f_k(alpha - k)."""
    return subset_poly(k).compose(UniPoly([-k, 1]))


def enumerate_partitions(k: int) -> List[PartitionVector]:
    """Partitions of k as multiplicity vectors (j_1, ..., j_k), j_1 + 2 j_2 + ... = k.

    Canonical order: reverse lexicographic on the vectors, so the all-ones
    partition comes first and the single part k last.  ``k = 0`` yields the
    single empty vector.
    """
    _nonneg(k)
    check_cap("PARTITION_CAP", k, "partition enumeration")
    out: List[PartitionVector] = []

    def rec(part, remaining, vec):
        # choose multiplicity of `part` (descending size keeps vectors canonical)
        if part == 0:
            if remaining == 0:
                out.append(tuple(vec))
            return
        for mult in range(remaining // part, -1, -1):
            vec[part - 1] = mult
            rec(part - 1, remaining - mult * part, vec)
        vec[part - 1] = 0

    rec(k, k, [0] * k)
    out.sort(reverse=True)
    return out


def _kramp_sum(k: int, shift: int, fact_weight) -> UniPoly:
    total = UniPoly()
    for vec in enumerate_partitions(k):
        l = sum(vec)
        denom = 1
        for i, j in enumerate(vec, start=1):
            denom *= math.factorial(j) * fact_weight(i + 1) ** j
        total = total + UniPoly.binomial(shift, k + l) * Fraction(math.factorial(k + l), denom)
    return total


@lru_cache(maxsize=None)
def kramp_C(k: int) -> UniPoly:
    """Sum of products of k-subsets of {1..n}, as a polynomial in n (Kramp's partition sum)."""
    _nonneg(k)
    return _kramp_sum(k, 1, lambda m: m)


@lru_cache(maxsize=None)
def kramp_Gamma(k: int) -> UniPoly:
    """Sum of products of k-multisets of {1..n}, as a polynomial in n."""
    _nonneg(k)
    return _kramp_sum(k, k, math.factorial)


def kramp_recurrence_check(m: int) -> bool:
    """m*g_m(n) == sum_{k<m} binomial(n-k, m+1-k) * g_k(n) as polynomials in n."""
    if m < 1:
        raise DomainError("m must be positive")
    rhs = UniPoly()
    for k in range(m):
        rhs = rhs + UniPoly.binomial(-k, m + 1 - k) * cycle_poly(k)
    return cycle_poly(m) * m == rhs


def duality_poly_check(k: int) -> bool:
    """C_k(n-1) == Gamma_k(-n) as polynomials in n."""
    _nonneg(k)
    left = kramp_C(k).compose(UniPoly([-1, 1]))
    right = kramp_Gamma(k).compose(UniPoly([0, -1]))
    return left == right


def cycle_poly_value(k: int, alpha) -> Fraction:
    """Exact g_k(alpha) for rational alpha."""
    return Fraction(cycle_poly(k)(Fraction(alpha)))


def half_integer_growth(k_max: int) -> List[int]:
    """The k <= k_max with |g_k(1/2)| > k!/7^k, by exact rational comparison."""
    if not 0 <= k_max <= 40:
        raise DomainError("k_max must lie in 0..40")
    half = Fraction(1, 2)
    return [
        k
        for k in range(k_max + 1)
        if abs(cycle_poly(k)(half)) > Fraction(math.factorial(k), 7**k)
    ]
