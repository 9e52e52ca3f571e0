import math
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from stirkit import CapExceeded, DomainError, PoleError, stirling_cycle, stirling_subset
from stirkit.analysis import (
    asym_factorial_power,
    asym_relative_error,
    convert,
    falling,
    falling_to_power,
    factorial_power_real,
    gamma_ratio_reference,
    generalized_power_series,
    kramp_expansion_check,
    kramp_general_factorial,
    kramp_partial_sum,
    log_power_series,
    log_series_identity_check,
    negative_power_series,
    nicole_check,
    nicole_sides,
    power_to_falling,
    power_to_rising,
    reciprocal_series,
    rising,
    rising_to_power,
    subset_diagonal_values,
)
from stirkit.poly import UniPoly
from stirkit.stirling_poly import subset_diagonal_poly

rationals = st.fractions(max_denominator=9).filter(lambda q: abs(q) < 30)


def test_integer_factorial_powers():
    assert falling(5, 3) == 60
    assert falling(1, -2) == Fraction(1, 6)
    assert falling(Fraction(7, 2), 0) == 1
    assert rising(2, 3) == 24
    assert rising(1, 6) == 720
    assert rising(5, -2) == Fraction(1, 12)
    with pytest.raises(PoleError):
        falling(-2, -3)
    with pytest.raises(PoleError):
        rising(2, -2)


@given(rationals, st.integers(-5, 5), st.integers(-5, 5))
def test_falling_splits(z, m, n):
    try:
        lhs = falling(z, m + n)
        rhs = falling(z, m) * falling(z - m, n)
    except ZeroDivisionError:
        return
    assert lhs == rhs


@given(rationals, st.integers(0, 8))
def test_rising_as_falling(z, n):
    assert rising(z, n) == falling(z + n - 1, n)


def test_real_factorial_powers():
    assert factorial_power_real(5.0, 3, "falling") == 60.0
    assert factorial_power_real(10.0, 0, "rising") == 1.0
    ref = float(gamma_ratio_reference(10, Fraction(1, 2), "rising"))
    assert math.isclose(factorial_power_real(10.0, 0.5, "rising"), ref, rel_tol=1e-12)
    for z, a in ((3.25, -2.5), (0.75, 1.5), (20.0, 7.3)):
        for kind in ("rising", "falling"):
            ref = float(gamma_ratio_reference(z, a, kind))
            assert math.isclose(factorial_power_real(z, a, kind), ref, rel_tol=1e-12)
    # a pole in the denominator gamma makes the power vanish
    assert factorial_power_real(-2.0, 0.5, "rising") == 0.0
    with pytest.raises(PoleError):
        factorial_power_real(-1.5, -0.5, "rising")
    with pytest.raises(DomainError):
        factorial_power_real(1.0, 0.5, "sideways")


def test_basis_conversions():
    assert power_to_falling([0, 0, 0, 1]) == [0, 1, 3, 1]
    assert power_to_falling([1]) == [1]
    assert power_to_falling([0, 0, 0, 0, 0, 1]) == [0, 1, 15, 25, 10, 1]
    assert rising_to_power([0, 0, 0, 0, 1]) == UniPoly([0, 6, 11, 6, 1])
    assert falling_to_power([0, 1]) == UniPoly([0, 1])
    for n in range(11):
        mono = [0] * n + [1]
        assert falling_to_power(power_to_falling(mono)) == UniPoly(mono)
        assert rising_to_power(power_to_rising(mono)) == UniPoly(mono)
    with pytest.raises(DomainError):
        convert([1], "power", "newton")


@given(st.lists(rationals, max_size=11))
def test_round_trips(cs):
    for basis in ("falling", "rising"):
        assert UniPoly(convert(convert(cs, "power", basis), basis, "power")) == UniPoly(cs)
    assert UniPoly(convert(convert(cs, "falling", "rising"), "rising", "falling")) == UniPoly(cs)


def test_basis_meaning():
    cs = [Fraction(1, 2), -3, 0, 2]
    for z in range(-3, 4):
        p = UniPoly(cs)(z)
        assert sum(c * falling(z, k) for k, c in enumerate(convert(cs, "power", "falling"))) == p
        assert sum(c * rising(z, k) for k, c in enumerate(convert(cs, "power", "rising"))) == p


def test_nicole():
    assert nicole_sides(1, [1]) == (1, 1)
    assert nicole_check(Fraction(3, 2), [1, 2, 3])
    assert nicole_check(2, [1, 1, 1, 1])
    with pytest.raises(PoleError):
        nicole_check(1, [-1])


def test_reciprocal_series():
    assert reciprocal_series(1, 1) == (Fraction(1, 2), Fraction(1, 2))
    p, r = reciprocal_series(2, 3)
    assert p + r == Fraction(1, 2)
    p, r = reciprocal_series(Fraction(1, 2), 10)
    assert p + r == 2 and 0 < r < Fraction(1, 100) * 100
    rng = random.Random(5)
    for _ in range(50):
        z = Fraction(rng.randint(1, 99), rng.randint(1, 20))
        for n in range(1, 21):
            p, r = reciprocal_series(z, n)
            assert p + r == 1 / z
    with pytest.raises(PoleError):
        reciprocal_series(-2, 3)


def test_negative_power_series():
    assert negative_power_series(1.0, -1, 1) == 0.5
    errors = [abs(negative_power_series(3.0, -2, m) - 1 / 9) for m in (40, 100, 400)]
    assert errors[0] > errors[1] > errors[2]
    # the slow tail: about 1.2e-4 after 40 terms
    assert 1e-4 < errors[0] < 1.3e-4
    with pytest.raises(DomainError):
        negative_power_series(-1.0, -1, 3)


def test_subset_diagonal_values():
    for a in range(0, 6):
        vals = subset_diagonal_values(a, 6)
        assert vals == [stirling_subset(a, a - k) for k in range(6)]
    half = Fraction(1, 2)
    assert subset_diagonal_values(half, 9) == [subset_diagonal_poly(k)(half) for k in range(9)]


def test_generalized_series():
    r = generalized_power_series(10.0, 0.5, terms=200)
    assert abs(r.value - math.sqrt(10)) / math.sqrt(10) <= 1e-6
    assert r.converged
    for n in range(6):
        v = generalized_power_series(2.5, n).value
        assert v == float(sum(stirling_subset(n, k) * falling(Fraction(5, 2), k) for k in range(n + 1)))
    # alpha = -1 reproduces the partial sums of 1/z
    r = generalized_power_series(2.0, -1.0, terms=40)
    assert math.isclose(r.value, 0.5 - float(reciprocal_series(2, 41)[1]), rel_tol=1e-12)
    with pytest.raises(CapExceeded):
        generalized_power_series(2.0, 0.5, terms=10**6)
    with pytest.raises(DomainError):
        generalized_power_series(-2.0, 0.5)


def test_asymptotic_expansion():
    for z in (1.5, 4.0, 11.0):
        v, bound = asym_factorial_power(z, 3, 3, "rising")
        assert math.isclose(v, z**3 + 3 * z**2 + 2 * z)
        assert bound == 0
    v, bound = asym_factorial_power(100.0, Fraction(1, 2), 5, "rising")
    ref = math.exp(math.lgamma(100.5) - math.lgamma(100.0))
    assert abs(v - ref) / ref < 1e-7
    assert bound > 0


@pytest.mark.parametrize("alpha", [Fraction(1, 2), Fraction(-1, 2), Fraction(1, 3)])
@pytest.mark.parametrize("kind", ["rising", "falling"])
def test_error_order(alpha, kind):
    from stirkit.stirling_poly import cycle_poly

    for m in range(1, 6):
        j = m + 1
        while cycle_poly(j)(alpha) == 0:
            j += 1
        ratio = asym_relative_error(10, alpha, m, kind) / asym_relative_error(100, alpha, m, kind)
        assert 10**j / 3 <= ratio <= 3 * 10**j, (m, ratio)


def test_kramp_generalized_factorial():
    assert kramp_general_factorial(1, 1, 4) == 24
    assert kramp_general_factorial(2, 3, 3) == 80
    assert kramp_general_factorial(5, 1, -2) == Fraction(1, 12)
    with pytest.raises(PoleError):
        kramp_general_factorial(2, 1, -3)
    assert all(kramp_expansion_check(n) for n in range(-4, 6))
    partial = kramp_partial_sum(4, 1, -1, 30)
    assert abs(partial - Fraction(1, 3)) < Fraction(1, 10**15)


def test_generating_series():
    assert all(log_series_identity_check(8))
    h = log_power_series(2)
    assert h[1] == UniPoly([0, Fraction(-1, 2)])
    assert h[1] * UniPoly([1, -1]) == subset_diagonal_poly(1)
