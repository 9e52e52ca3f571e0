import random

import pytest

from stirkit import CapExceeded, DomainError, binomial, stirling_cycle, stirling_subset
from stirkit.oracles import (
    Poset,
    antichain,
    bell,
    chain,
    complete_hom,
    count_perms_by_cycles,
    count_set_partitions,
    elem_sym,
    fence_bracket_sum,
    fence_poset,
    fence_sum_strict,
    fence_sum_weak,
    format_poset,
    omega,
    omega_bar,
    omega_product,
    order_poly,
    parse_poset,
    random_poset,
)
from stirkit.poly import UniPoly


def test_spot_values():
    assert count_perms_by_cycles(4, 2) == 11
    assert count_perms_by_cycles(0, 0) == 1
    assert count_perms_by_cycles(5, 1) == 24
    assert count_set_partitions(4, 2) == 7
    assert bell(5) == 52
    assert elem_sym(4, 3) == 50
    assert elem_sym(6, 0) == 1
    assert complete_hom(3, 3) == 90


def test_caps_are_explicit():
    with pytest.raises(CapExceeded):
        count_perms_by_cycles(10, 2)
    with pytest.raises(CapExceeded):
        complete_hom(9, 1)
    with pytest.raises(CapExceeded):
        omega(antichain(8), 8)


def test_against_tables():
    for n in range(8):
        for k in range(n + 1):
            assert count_perms_by_cycles(n, k) == stirling_cycle(n, k)
            assert count_set_partitions(n, k) == stirling_subset(n, k)


def test_poset_validation():
    with pytest.raises(DomainError):
        Poset(3, [(0, 1), (1, 2), (2, 0)])
    with pytest.raises(DomainError):
        Poset(2, [(0, 5)])


def test_poset_text_round_trip():
    p = fence_poset(2)
    assert parse_poset(format_poset(p)) == p
    assert parse_poset("3  # three points\n0 < 1\n\n1 < 2\n").relations() == {(0, 1), (1, 2), (0, 2)}


def test_chain_and_antichain():
    for p in range(1, 4):
        for n in range(5):
            assert omega(chain(p), n) == binomial(n + p - 1, p)
            assert omega_bar(chain(p), n) == binomial(n, p)
            assert omega(antichain(p), n) == omega_bar(antichain(p), n) == n**p
    assert order_poly(antichain(3)) == UniPoly([0, 0, 0, 1])
    assert order_poly(chain(2), strict=True) == UniPoly([0, "-1/2", "1/2"])


def test_fence_posets():
    assert fence_poset(1).size == 2 and len(fence_poset(1).covers) == 1
    assert omega(fence_poset(2), 3) == 25
    assert omega_bar(fence_poset(2), 4) == 11
    for k in range(1, 4):
        for n in range(5):
            f = fence_poset(k)
            assert omega(f, n) == fence_sum_weak(k, n) == stirling_subset(n + k, n)
            assert omega_bar(f, n) == fence_sum_strict(k, n) == stirling_cycle(n, n - k)
            if n <= 3:
                assert fence_bracket_sum(k, n) == omega(f, n)
                assert fence_bracket_sum(k, n, strict=True) == omega_bar(f, n)


def test_backtracking_matches_product_scan():
    rng = random.Random(7)
    for _ in range(10):
        p = random_poset(rng.randint(1, 5), rng)
        for n in range(4):
            assert omega(p, n) == omega_product(p, n)
            assert omega_bar(p, n) == omega_product(p, n, strict=True)


def test_random_posets_are_reduced():
    rng = random.Random(3)
    for _ in range(20):
        p = random_poset(6, rng)
        rel = p.relations()
        for a, b in p.covers:
            assert not any((a, c) in rel and (c, b) in rel for c in range(p.size))


def test_reciprocity_small():
    rng = random.Random(11)
    for _ in range(5):
        p = random_poset(rng.randint(1, 5), rng)
        assert order_poly(p).compose(UniPoly([0, -1])) == order_poly(p, strict=True) * (-1) ** p.size
