"""Brute-force ground truth.

Every function here counts or sums by exhaustive enumeration and is kept
deliberately naive: no recurrences, no closed forms, nothing shared with
the formula modules.  Each operation has a hard size cap and raises
:class:`CapExceeded` instead of truncating.
"""

from __future__ import annotations

import itertools
import math
import random
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import FrozenSet, Iterable, Tuple

from stirkit.errors import CapExceeded, DomainError
from stirkit.poly import UniPoly

PERM_CAP = 9
PARTITION_CAP = 12
ESYM_CAP = 9
HSYM_CAP = (8, 6)
OMEGA_BUDGET = 2_000_000
ORDER_POLY_CAP = 7


def _require(cond, message):
    if not cond:
        raise CapExceeded(message)


def _cycle_count(perm) -> int:
    seen = [False] * len(perm)
    cycles = 0
    for start in range(len(perm)):
        if not seen[start]:
            cycles += 1
            j = start
            while not seen[j]:
                seen[j] = True
                j = perm[j]
    return cycles


@lru_cache(maxsize=None)
def _perm_histogram(n: int) -> Counter:
    return Counter(_cycle_count(p) for p in itertools.permutations(range(n)))


def count_perms_by_cycles(n: int, k: int) -> int:
    """Number of permutations of ``n`` objects with exactly ``k`` cycles, by enumeration."""
    if n < 0:
        raise DomainError("n must be nonnegative")
    _require(n <= PERM_CAP, f"permutation enumeration capped at n <= {PERM_CAP}")
    return _perm_histogram(n)[k]


def _set_partitions(n: int):
    # restricted growth strings: a[0] = 0, a[i] <= 1 + max(a[:i])
    if n == 0:
        yield ()
        return
    a = [0] * n

    def extend(i, top):
        if i == n:
            yield tuple(a)
            return
        for v in range(top + 2):
            a[i] = v
            yield from extend(i + 1, max(top, v))

    yield from extend(1, 0)


@lru_cache(maxsize=None)
def _partition_histogram(n: int) -> Counter:
    return Counter((max(rgs) + 1 if rgs else 0) for rgs in _set_partitions(n))


def count_set_partitions(n: int, k: int) -> int:
    """Number of partitions of an ``n``-set into ``k`` nonempty blocks, by enumeration."""
    if n < 0:
        raise DomainError("n must be nonnegative")
    _require(n <= PARTITION_CAP, f"set-partition enumeration capped at n <= {PARTITION_CAP}")
    return _partition_histogram(n)[k]


def bell(n: int) -> int:
    if n < 0:
        raise DomainError("n must be nonnegative")
    _require(n <= PARTITION_CAP, f"set-partition enumeration capped at n <= {PARTITION_CAP}")
    return sum(_partition_histogram(n).values())


def elem_sym(n: int, k: int) -> int:
    """Sum of products of the k-subsets of {1..n}."""
    if n < 0:
        raise DomainError("n must be nonnegative")
    _require(n <= ESYM_CAP, f"elem_sym capped at n <= {ESYM_CAP}")
    if k < 0:
        return 0
    return sum(math.prod(c) for c in itertools.combinations(range(1, n + 1), k))


def complete_hom(n: int, k: int) -> int:
    """Sum of products of the k-multisets drawn from {1..n}."""
    if n < 0:
        raise DomainError("n must be nonnegative")
    _require(n <= HSYM_CAP[0] and k <= HSYM_CAP[1], f"complete_hom capped at n <= {HSYM_CAP[0]}, k <= {HSYM_CAP[1]}")
    if k < 0:
        return 0
    return sum(math.prod(c) for c in itertools.combinations_with_replacement(range(1, n + 1), k))


@dataclass(frozen=True)
class Poset:
    """Finite poset on elements ``0..size-1`` given by cover pairs ``(a, b)`` meaning a < b."""

    size: int
    covers: FrozenSet[Tuple[int, int]]

    def __init__(self, size: int, covers: Iterable[Tuple[int, int]] = ()):
        covers = frozenset((int(a), int(b)) for a, b in covers)
        for a, b in covers:
            if not (0 <= a < size and 0 <= b < size):
                raise DomainError(f"cover ({a}, {b}) names an element outside 0..{size - 1}")
            if a == b:
                raise DomainError(f"cover ({a}, {b}) is reflexive")
        object.__setattr__(self, "size", int(size))
        object.__setattr__(self, "covers", covers)
        self.topological_order()  # rejects cycles

    def topological_order(self):
        indeg = [0] * self.size
        succ = [[] for _ in range(self.size)]
        for a, b in self.covers:
            indeg[b] += 1
            succ[a].append(b)
        ready = sorted(i for i in range(self.size) if indeg[i] == 0)
        order = []
        while ready:
            v = ready.pop(0)
            order.append(v)
            for w in sorted(succ[v]):
                indeg[w] -= 1
                if indeg[w] == 0:
                    ready.append(w)
        if len(order) != self.size:
            raise DomainError("cover relations contain a cycle")
        return order

    def relations(self):
        """All strict pairs ``a < b`` of the transitive closure."""
        below = {v: set() for v in range(self.size)}
        for v in self.topological_order():
            for a, b in self.covers:
                if b == v:
                    below[v] |= below[a] | {a}
        return {(a, b) for b in below for a in below[b]}


def chain(p: int) -> Poset:
    return Poset(p, [(i, i + 1) for i in range(p - 1)])


def antichain(p: int) -> Poset:
    return Poset(p, [])


def fence_poset(k: int) -> Poset:
    """The zigzag order on 2k points: x_1 < ... < x_k and y_i < x_i.

    Element ``i`` (0-based) is x_{i+1}; element ``k + i`` is y_{i+1}.
    """
    if k < 1:
        raise DomainError("fence poset needs k >= 1")
    covers = [(i, i + 1) for i in range(k - 1)] + [(k + i, i) for i in range(k)]
    return Poset(2 * k, covers)


def random_poset(p: int, rng: random.Random, edge_prob: float = 0.35) -> Poset:
    """Random DAG on a shuffled vertex order, reduced to its cover relations."""
    labels = list(range(p))
    rng.shuffle(labels)
    edges = {
        (labels[i], labels[j])
        for i in range(p)
        for j in range(i + 1, p)
        if rng.random() < edge_prob
    }
    closure = Poset(p, edges).relations()
    covers = {
        (a, b)
        for a, b in closure
        if not any((a, c) in closure and (c, b) in closure for c in range(p))
    }
    return Poset(p, covers)


def parse_poset(text: str) -> Poset:
    """Read ``<element count>`` then lines ``a < b`` (blank lines and ``#`` comments ignored)."""
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise DomainError("empty poset description")
    try:
        size = int(lines[0])
    except ValueError:
        raise DomainError(f"first line must be the element count, got {lines[0]!r}") from None
    covers = []
    for ln in lines[1:]:
        parts = ln.split("<")
        if len(parts) != 2:
            raise DomainError(f"expected 'a < b', got {ln!r}")
        try:
            covers.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise DomainError(f"expected integer elements in {ln!r}") from None
    return Poset(size, covers)


def format_poset(poset: Poset) -> str:
    lines = [str(poset.size)] + [f"{a} < {b}" for a, b in sorted(poset.covers)]
    return "\n".join(lines) + "\n"


def _count_maps(poset: Poset, n: int, strict: bool) -> int:
    if n < 0:
        raise DomainError("n must be nonnegative")
    _require(n ** poset.size <= OMEGA_BUDGET, f"n^p = {n}^{poset.size} exceeds enumeration budget {OMEGA_BUDGET}")
    order = poset.topological_order()
    preds = {v: [a for a, b in poset.covers if b == v] for v in order}
    f = [0] * poset.size
    # backtracking in topological order: every map is visited once
    def walk(i):
        if i == len(order):
            return 1
        v = order[i]
        total = 0
        for value in range(1, n + 1):
            if all((f[a] < value) if strict else (f[a] <= value) for a in preds[v]):
                f[v] = value
                total += walk(i + 1)
        return total

    return walk(0)


def omega(poset: Poset, n: int) -> int:
    """Order-preserving maps into the chain {1..n}."""
    return _count_maps(poset, n, strict=False)


def omega_bar(poset: Poset, n: int) -> int:
    """Strictly order-preserving maps into the chain {1..n}."""
    return _count_maps(poset, n, strict=True)


def omega_product(poset: Poset, n: int, strict: bool = False) -> int:
    """Same count as :func:`omega`/:func:`omega_bar` by scanning all of {1..n}^p."""
    _require(n ** poset.size <= OMEGA_BUDGET, "enumeration budget exceeded")
    rel = poset.relations()
    ok = (lambda a, b: a < b) if strict else (lambda a, b: a <= b)
    return sum(
        1
        for f in itertools.product(range(1, n + 1), repeat=poset.size)
        if all(ok(f[a], f[b]) for a, b in rel)
    )


def order_poly(poset: Poset, strict: bool = False) -> UniPoly:
    """Interpolating polynomial of the map counts at n = 0..p, checked at p+1..p+3."""
    p = poset.size
    _require(p <= ORDER_POLY_CAP, f"order polynomial capped at p <= {ORDER_POLY_CAP}")
    count = omega_bar if strict else omega
    nodes = list(range(p + 1))
    poly = UniPoly.interpolate(nodes, [count(poset, n) for n in nodes])
    for n in range(p + 1, p + 4):
        if poly(n) != count(poset, n):
            raise AssertionError(f"order polynomial of degree <= {p} fails at n = {n}")
    return poly


def fence_sum_weak(k: int, n: int) -> int:
    """Sum over 1 <= x_1 <= ... <= x_k <= n of x_1*...*x_k."""
    return sum(math.prod(xs) for xs in itertools.combinations_with_replacement(range(1, n + 1), k))


def fence_sum_strict(k: int, n: int) -> int:
    """Sum over 1 <= x_1 < ... < x_k <= n-1 of x_1*...*x_k."""
    return sum(math.prod(xs) for xs in itertools.combinations(range(1, n), k))


def fence_bracket_sum(k: int, n: int, strict: bool = False) -> int:
    """Raw bracket sum over all x_i, y_i in {1..n}; tiny cases only."""
    _require(n ** (2 * k) <= OMEGA_BUDGET, "enumeration budget exceeded")
    lt = (lambda a, b: a < b) if strict else (lambda a, b: a <= b)
    total = 0
    for xs in itertools.product(range(1, n + 1), repeat=k):
        if not all(lt(xs[i], xs[i + 1]) for i in range(k - 1)):
            continue
        for ys in itertools.product(range(1, n + 1), repeat=k):
            total += all(lt(ys[i], xs[i]) for i in range(k))
    return total


def is_prime_trial(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True
