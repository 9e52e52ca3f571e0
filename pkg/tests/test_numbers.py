import threading

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stirkit import (
    CapExceeded,
    DomainError,
    binomial,
    factorial,
    stirling_cycle,
    stirling_subset,
    table_window,
)

small = st.integers(min_value=-15, max_value=15)


def test_factorial():
    assert factorial(0) == 1
    assert factorial(10) == 3628800
    with pytest.raises(DomainError):
        factorial(-1)


@pytest.mark.parametrize(
    "n, k, expected",
    [(5, 2, 10), (5, 7, 0), (0, 0, 1), (-1, 3, -1), (-2, 3, -4), (-3, 2, 6), (4, -1, 0), (-4, -2, 0)],
)
def test_binomial(n, k, expected):
    assert binomial(n, k) == expected


@given(small, st.integers(min_value=1, max_value=15))
def test_binomial_pascal(n, k):
    assert binomial(n, k) == binomial(n - 1, k) + binomial(n - 1, k - 1)


def test_spot_values():
    assert stirling_cycle(4, 2) == 11
    assert stirling_subset(4, 2) == 7
    assert stirling_cycle(-2, -4) == 7
    assert stirling_subset(-4, -2) == 0  # mixed-sign quadrant check below
    assert stirling_subset(5, 3) == 25
    assert stirling_cycle(10, 1) == 362880


def test_boundary_conditions():
    for j in range(-6, 7):
        assert stirling_cycle(0, j) == stirling_subset(0, j) == int(j == 0)
        assert stirling_cycle(j, 0) == stirling_subset(j, 0) == int(j == 0)


def test_mixed_signs_vanish():
    for n in range(1, 6):
        for k in range(1, 6):
            assert stirling_cycle(n, -k) == stirling_cycle(-n, k) == 0
            assert stirling_subset(n, -k) == stirling_subset(-n, k) == 0


@given(small, small)
def test_duality(n, k):
    assert stirling_subset(n, k) == stirling_cycle(-k, -n)


@given(small, small)
def test_recurrences_hold_everywhere(n, k):
    if (n, k) == (0, 0):
        return
    assert stirling_cycle(n, k) == (n - 1) * stirling_cycle(n - 1, k) + stirling_cycle(n - 1, k - 1)
    assert stirling_subset(n, k) == k * stirling_subset(n - 1, k) + stirling_subset(n - 1, k - 1)


def test_row_sums():
    for n in range(1, 9):
        assert sum(stirling_cycle(n, k) for k in range(n + 1)) == factorial(n)


def test_large_values_are_exact():
    # {100 brace 99} = binomial(100, 2)
    assert stirling_subset(100, 99) == 4950
    assert stirling_cycle(60, 59) == binomial(60, 2)


def test_concurrent_growth_is_consistent():
    results = []

    def worker(n):
        results.append((n, stirling_cycle(n, n // 2)))

    threads = [threading.Thread(target=worker, args=(n,)) for n in range(120, 160)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    for n, v in results:
        assert v == stirling_cycle(n, n // 2)


def test_table_window():
    w = table_window("cycle", (-1, 2), (0, 2))
    assert w.entries == ((0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 1, 1))
    assert w.entry(2, 2) == 1
    assert list(w.n_values) == [-1, 0, 1, 2]
    b = table_window("binomial", (-2, -2), (0, 3))
    assert b.entries == ((1, -2, 3, -4),)


def test_table_window_errors(monkeypatch):
    with pytest.raises(DomainError):
        table_window("lah", (0, 1), (0, 1))
    with pytest.raises(DomainError):
        table_window("cycle", (3, 1), (0, 1))
    monkeypatch.setenv("STIRKIT_TABLE_CAP", "8")
    with pytest.raises(CapExceeded):
        table_window("subset", (0, 2), (0, 2))
