"""Factorial powers, basis conversions, and the series they satisfy.

Rational identities are evaluated with :class:`fractions.Fraction`; floats
appear only where the claim is analytic (convergence or asymptotics).
Real factorial powers go through ``math.lgamma`` with explicit sign
tracking, which is also the baseline the asymptotic expansions are
compared against.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from numbers import Rational
from typing import List, NamedTuple, Sequence, Tuple

import mpmath

from stirkit.config import check_cap
from stirkit.errors import DomainError, PoleError
from stirkit.numbers import stirling_cycle, stirling_subset
from stirkit.poly import UniPoly
from stirkit.series import alpha_power_of_log_series, log_series_power_coefficients
from stirkit.stirling_poly import cycle_poly

POLE_TOL = 1e-9

RISING = "rising"
FALLING = "falling"
_KINDS = (RISING, FALLING)


def _exact(z):
    return isinstance(z, (int, Rational))


def _check_kind(kind):
    if kind not in _KINDS:
        raise DomainError(f"kind must be 'rising' or 'falling', got {kind!r}")


# -- integer exponents ------------------------------------------------------


def falling(z, n: int):
    """z(z-1)...(z-n+1) for n >= 0; 1/((z+1)...(z+|n|)) for n < 0."""
    if n >= 0:
        acc = 1
        for j in range(n):
            acc *= z - j
        return acc
    den = 1
    for j in range(1, -n + 1):
        den *= z + j
    if den == 0:
        raise PoleError(f"falling({z}, {n}) has a zero factor in the denominator")
    return Fraction(1) / den if _exact(z) else 1.0 / den


def rising(z, n: int):
    """z(z+1)...(z+n-1) for n >= 0; 1/((z-1)...(z-|n|)) for n < 0."""
    if n >= 0:
        acc = 1
        for j in range(n):
            acc *= z + j
        return acc
    den = 1
    for j in range(1, -n + 1):
        den *= z - j
    if den == 0:
        raise PoleError(f"rising({z}, {n}) has a zero factor in the denominator")
    return Fraction(1) / den if _exact(z) else 1.0 / den


# -- real exponents ---------------------------------------------------------


def _near_pole(x: float) -> bool:
    return x <= 0.5 and abs(x - round(x)) < POLE_TOL


def _log_gamma(x: float) -> Tuple[int, float]:
    """(sign, log|Gamma(x)|) for x off the poles."""
    logabs = math.lgamma(x)
    if x > 0:
        return 1, logabs
    # Gamma alternates sign between consecutive negative integers
    return (-1 if math.floor(-x) % 2 == 0 else 1), logabs


def _gamma_ratio_log(num: float, den: float) -> Tuple[int, float]:
    """(sign, log|Gamma(num)/Gamma(den)|); sign 0 means the ratio is exactly 0."""
    if _near_pole(num):
        raise PoleError(f"gamma argument {num!r} is at or near a pole")
    if _near_pole(den):
        if den == round(den):
            return 0, -math.inf
        raise PoleError(f"gamma argument {den!r} is near a pole")
    s1, l1 = _log_gamma(num)
    s2, l2 = _log_gamma(den)
    return s1 * s2, l1 - l2


def _is_integral(a) -> bool:
    return float(a).is_integer()


def _log_factorial_power(z: float, a: float, kind: str) -> Tuple[int, float]:
    if kind == RISING:
        return _gamma_ratio_log(z + a, z)
    return _gamma_ratio_log(z + 1.0, z - a + 1.0)


def factorial_power_real(z: float, a: float, kind: str = FALLING) -> float:
    """Gamma(z+a)/Gamma(z) (rising) or Gamma(z+1)/Gamma(z-a+1) (falling).

    Integer exponents use the exact product form, so they work at
    arguments where the gamma ratio is an indeterminate limit.
    """
    _check_kind(kind)
    z, a = float(z), float(a)
    if _is_integral(a):
        fn = rising if kind == RISING else falling
        return float(fn(z, int(a)))
    sign, logabs = _log_factorial_power(z, a, kind)
    if sign == 0:
        return 0.0
    return sign * math.exp(logabs)


def gamma_ratio_reference(z, a, kind: str = FALLING, dps: int = 60):
    """High-precision factorial power via mpmath, for measuring errors."""
    _check_kind(kind)
    with mpmath.workdps(dps):
        z = mpmath.mpf(Fraction(z).numerator) / Fraction(z).denominator
        a = mpmath.mpf(Fraction(a).numerator) / Fraction(a).denominator
        if kind == RISING:
            return mpmath.rf(z, a)
        return mpmath.ff(z, a)


# -- basis conversions ------------------------------------------------------


def _coeff_list(coeffs) -> List[Fraction]:
    if isinstance(coeffs, UniPoly):
        return list(coeffs.coeffs)
    return [Fraction(c) for c in coeffs]


def _trim(cs):
    cs = list(cs)
    while cs and cs[-1] == 0:
        cs.pop()
    return cs


def power_to_falling(p) -> List[Fraction]:
    """Coefficients on z^(0 falling), z^(1 falling), ... of a polynomial in z."""
    a = _coeff_list(p)
    out = [Fraction(0)] * len(a)
    for n, c in enumerate(a):
        if c:
            for k in range(n + 1):
                out[k] += c * stirling_subset(n, k)
    return _trim(out)


def power_to_rising(p) -> List[Fraction]:
    a = _coeff_list(p)
    out = [Fraction(0)] * len(a)
    for n, c in enumerate(a):
        if c:
            for k in range(n + 1):
                out[k] += c * (-1) ** (n - k) * stirling_subset(n, k)
    return _trim(out)


def falling_to_power(coeffs) -> UniPoly:
    out = [Fraction(0)] * len(coeffs)
    for n, c in enumerate(_coeff_list(coeffs)):
        if c:
            for k in range(n + 1):
                out[k] += c * (-1) ** (n - k) * stirling_cycle(n, k)
    return UniPoly(out)


def rising_to_power(coeffs) -> UniPoly:
    out = [Fraction(0)] * len(coeffs)
    for n, c in enumerate(_coeff_list(coeffs)):
        if c:
            for k in range(n + 1):
                out[k] += c * stirling_cycle(n, k)
    return UniPoly(out)


BASES = ("power", "falling", "rising")


def convert(coeffs, source: str, target: str) -> List[Fraction]:
    """Re-express a polynomial given in one basis in another, exactly."""
    if source not in BASES or target not in BASES:
        raise DomainError(f"bases must be among {BASES}")
    if source == "power":
        poly = UniPoly(_coeff_list(coeffs))
    elif source == "falling":
        poly = falling_to_power(coeffs)
    else:
        poly = rising_to_power(coeffs)
    if target == "power":
        return list(poly.coeffs)
    if target == "falling":
        return power_to_falling(poly)
    return power_to_rising(poly)


# -- exact convergent-series identities ----------------------------------------


def nicole_sides(z, zs: Sequence) -> Tuple[Fraction, Fraction]:
    """(1/z, finite expansion with remainder) for the given z_1..z_n."""
    z = Fraction(z)
    zs = [Fraction(v) for v in zs]
    if z == 0 or any(z + v == 0 for v in zs):
        raise PoleError("a denominator factor of the expansion vanishes")
    total = Fraction(0)
    num = Fraction(1)
    den = Fraction(1)
    for v in zs:
        den *= z + v
        total += num / den
        num *= v
    total += num / (z * den)
    return 1 / z, total


def nicole_check(z, zs: Sequence) -> bool:
    lhs, rhs = nicole_sides(z, zs)
    return lhs == rhs


def reciprocal_series(z, n: int) -> Tuple[Fraction, Fraction]:
    """Partial sum of 0!/(z+1) + 1!/((z+1)(z+2)) + ... to n terms, and the exact remainder.

    The two always add up to 1/z.
    """
    if n < 1:
        raise DomainError("n must be positive")
    z = Fraction(z)
    if any(z + j == 0 for j in range(n + 1)):
        raise PoleError("z + j vanishes for some 0 <= j <= n")
    partial = Fraction(0)
    den = Fraction(1)
    for k in range(1, n + 1):
        den *= z + k
        partial += math.factorial(k - 1) / den
    remainder = math.factorial(n) / (z * den)
    return partial, remainder


def negative_power_series(z: float, n: int, terms: int) -> float:
    """Sum of the first ``terms`` nonzero terms of subset(n, k) * z^(k falling), k = n, n-1, ...

    For n < 0 and z > 0 the partial sums tend to z**n.  Terms are summed
    exactly and rounded once at the end.
    """
    if n >= 0:
        raise DomainError("n must be negative")
    if not z > 0:
        raise DomainError("z must be positive")
    if terms < 0:
        raise DomainError("terms must be nonnegative")
    zq = Fraction(z)
    total = Fraction(0)
    den = Fraction(1)
    for j in range(1, -n):
        den *= zq + j
    for i in range(terms):
        k = n - i
        den *= zq - k  # now (z+1)...(z+|k|)
        total += stirling_subset(n, k) / den
    return float(total)


# -- generalized Stirling identity --------------------------------------------


class SeriesValue(NamedTuple):
    value: float
    terms_used: int
    converged: bool
    last_term: float


def _subset_diagonal_stream(alpha: Fraction):
    # subset(alpha, alpha-k) = h_k * (1-alpha)(2-alpha)...(k-alpha)
    prod = Fraction(1)
    for k, h in enumerate(log_series_power_coefficients(alpha)):
        if k:
            prod *= k - alpha
        yield h * prod


def subset_diagonal_values(alpha, count: int) -> List[Fraction]:
    """Exact subset(alpha, alpha-k) for k < count at rational alpha.

    Read off the series ((1/u) ln(1/(1-u)))^(-alpha): its k-th coefficient
    times (1-alpha)(2-alpha)...(k-alpha).
    """
    return list(itertools.islice(_subset_diagonal_stream(Fraction(alpha)), max(count, 0)))


def _signed_log(q: Fraction) -> Tuple[int, float]:
    if q == 0:
        return 0, -math.inf
    sign = 1 if q > 0 else -1
    q = abs(q)
    return sign, math.log(q.numerator) - math.log(q.denominator)


def generalized_power_series(
    z: float, alpha: float, terms: int = 200, tol: float = 1e-17
) -> SeriesValue:
    """Partial sums of sum_k subset(alpha, alpha-k) * z^((alpha-k) falling), tending to z**alpha.

    Stops once three consecutive terms fall below ``tol * |sum|`` or after
    ``terms + 1`` terms (k = 0..terms).  A nonnegative integer alpha gives
    a finite sum.
    """
    if not z > 0:
        raise DomainError("z must be positive")
    if terms < 0:
        raise DomainError("terms must be nonnegative")
    check_cap("TERM_CAP", terms, "series term budget")
    z = float(z)
    if _is_integral(alpha) and alpha >= 0:
        n = int(alpha)
        # exact in the binary value of z, then rounded once
        zq = Fraction(z)
        total = sum(stirling_subset(n, j) * falling(zq, j) for j in range(n + 1))
        return SeriesValue(float(total), n + 1, True, 0.0)
    aq = Fraction(alpha)
    total = 0.0
    small = 0
    coeffs = _subset_diagonal_stream(aq)
    last = 0.0
    for k in range(terms + 1):
        cs, cl = _signed_log(next(coeffs))
        # log domain even for integer exponents: the products underflow long before the terms do
        fs, fl = _log_factorial_power(z, float(aq - k), FALLING)
        last = 0.0 if cs == 0 or fs == 0 else cs * fs * math.exp(cl + fl)
        total += last
        small = small + 1 if abs(last) < tol * abs(total) else 0
        if small >= 3:
            return SeriesValue(total, k + 1, True, last)
    return SeriesValue(total, terms + 1, False, last)


# -- asymptotic expansions -----------------------------------------------------


def asym_factorial_power(z: float, alpha, m: int, kind: str = RISING) -> Tuple[float, float]:
    """Truncated expansion sum_{k<=m} (+-1)^k g_k(alpha) z^(alpha-k) and its modeled error.

    The error model is the first omitted term |g_{m+1}(alpha)| z^(alpha-m-1);
    it is a heuristic, not a proven bound.
    """
    _check_kind(kind)
    if not z > 0:
        raise DomainError("z must be positive")
    if m < 0:
        raise DomainError("m must be nonnegative")
    aq = Fraction(alpha)
    z = float(z)
    total = 0.0
    for k in range(m + 1):
        c = float(cycle_poly(k)(aq))
        if kind == FALLING and k % 2:
            c = -c
        total += c * z ** (float(aq) - k)
    bound = abs(float(cycle_poly(m + 1)(aq))) * z ** (float(aq) - m - 1)
    return total, bound


def asym_relative_error(z, alpha, m: int, kind: str = RISING, dps: int = 50) -> float:
    """Relative truncation error of the m-term expansion, measured at ``dps`` digits.

    At large z the error drops below double precision, so a float
    evaluation cannot resolve it; here both the expansion and the gamma
    ratio are computed in mpmath.
    """
    _check_kind(kind)
    aq, zq = Fraction(alpha), Fraction(z)
    with mpmath.workdps(dps):
        zm = mpmath.mpf(zq.numerator) / zq.denominator
        am = mpmath.mpf(aq.numerator) / aq.denominator
        total = mpmath.mpf(0)
        for k in range(m + 1):
            c = cycle_poly(k)(aq)
            if kind == FALLING and k % 2:
                c = -c
            total += mpmath.mpf(c.numerator) / c.denominator * mpmath.power(zm, am - k)
        ref = gamma_ratio_reference(zq, aq, kind, dps)
        return float(abs(total - ref) / abs(ref))


# -- Kramp's generalized factorial ---------------------------------------------


def kramp_general_factorial(a, r, n: int) -> Fraction:
    """a(a+r)...(a+(n-1)r) for n >= 0; 1/((a-r)(a-2r)...(a-|n|r)) for n < 0."""
    a, r = Fraction(a), Fraction(r)
    if n >= 0:
        acc = Fraction(1)
        for j in range(n):
            acc *= a + j * r
        return acc
    den = Fraction(1)
    for j in range(1, -n + 1):
        den *= a - j * r
    if den == 0:
        raise PoleError("a zero factor appears in the denominator")
    return 1 / den


# (r, c) with a = c*|n|*r, so the expansion ratio |n r / a| is 1/c
KRAMP_SAMPLES = ((1, 4), (-1, 4), (Fraction(1, 2), 6), (3, -6))


def kramp_partial_sum(a, r, n: int, m: int) -> Fraction:
    """sum_{j<=m} g_j(n) a^(n-j) r^j, exactly."""
    a, r = Fraction(a), Fraction(r)
    return sum(cycle_poly(j)(n) * a ** (n - j) * r**j for j in range(m + 1))


def kramp_expansion_check(n: int, m: int = 30, rel_tol: float = 1e-9) -> bool:
    """Check Kramp's expansion of a^(n|r) in powers of r/a.

    For n >= 0 this is an exact identity between the coefficients of
    prod_{i<n} (1 + i t) and g_j(n).  For n < 0 the m-term partial sums are
    compared exactly with 1/((a-r)...(a-|n|r)) at sample points where
    |a| >= 4|n||r|, requiring relative error <= rel_tol.
    """
    if n >= 0:
        expanded = UniPoly([1])
        for i in range(n):
            expanded = expanded * UniPoly([1, i])
        target = UniPoly(cycle_poly(j)(n) for j in range(n + 1))
        return expanded == target
    ok = True
    for r, c in KRAMP_SAMPLES:
        r = Fraction(r)
        a = c * (-n) * r
        exact = kramp_general_factorial(a, r, n)
        err = abs(kramp_partial_sum(a, r, n, m) - exact)
        ok = ok and err <= Fraction(rel_tol) * abs(exact)
    return ok


# -- generating series for the subset diagonal ---------------------------------


def log_power_series(order: int):
    """Coefficients h_k in Q[alpha] of ((1/u) ln(1/(1-u)))^(-alpha), k = 0..order."""
    return alpha_power_of_log_series(order)


def log_series_identity_check(order: int) -> List[bool]:
    """h_k * (1-alpha)...(k-alpha) == subset(alpha, alpha-k) as polynomials, per k."""
    from stirkit.stirling_poly import subset_diagonal_poly

    series = log_power_series(order)
    out = []
    prod = UniPoly([1])
    for k in range(order + 1):
        if k:
            prod = prod * UniPoly([k, -1])
        out.append(series[k] * prod == subset_diagonal_poly(k))
    return out
