import itertools
from fractions import Fraction

import pytest

from stirkit import CapExceeded
from stirkit.poly import UniPoly
from stirkit.series import (
    TruncatedSeries,
    alpha_power_of_log_series,
    log_series_power_coefficients,
    numeric_power_of_log_series,
)


def test_exp_log_inverse():
    s = TruncatedSeries([1, 2, Fraction(1, 3), -1, 5], 4)
    assert s.log().exp() == s
    t = TruncatedSeries([0, 1, 0, 0, 0, 0], 5)
    e = t.exp()
    assert list(e.coeffs) == [1, 1, Fraction(1, 2), Fraction(1, 6), Fraction(1, 24), Fraction(1, 120)]
    assert e.log() == t


def test_power_matches_repeated_product():
    s = TruncatedSeries([1, 3, -2, 7], 3)
    assert s.power(3) == s * s * s
    assert s.power(Fraction(1, 2)) * s.power(Fraction(1, 2)) == s


def test_domain_errors():
    with pytest.raises(ValueError):
        TruncatedSeries([2, 1], 1).log()
    with pytest.raises(ValueError):
        TruncatedSeries([1, 1], 1).exp()
    with pytest.raises(ValueError):
        TruncatedSeries([1], 1) + TruncatedSeries([1], 2)


def test_symbolic_series():
    h = alpha_power_of_log_series(4)
    assert h[0] == UniPoly([1])
    assert h[1] == UniPoly([0, Fraction(-1, 2)])
    for a in (Fraction(1, 3), Fraction(-2), Fraction(5, 2)):
        num = numeric_power_of_log_series(a, 4)
        assert [c(a) for c in h.coeffs] == list(num.coeffs)


def test_streamed_coefficients_agree_with_log_exp():
    for a in (Fraction(1, 2), Fraction(-1), Fraction(7, 3)):
        streamed = list(itertools.islice(log_series_power_coefficients(a), 25))
        assert streamed == list(numeric_power_of_log_series(a, 24).coeffs)


def test_series_cap(monkeypatch):
    monkeypatch.setenv("STIRKIT_SERIES_CAP", "4")
    with pytest.raises(CapExceeded):
        alpha_power_of_log_series(5)
