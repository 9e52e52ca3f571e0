"""Machine-checkable catalog of bracket-sum identities.

Each entry evaluates both sides of an identity exactly through the bracket
engine in :mod:`stirkit.iverson` and compares them with an independent
direct computation.  Identity ids are fixed opaque labels shared with the CLI
(``"1.9"`` etc.); every entry also has a descriptive name.

Parameters are plain JSON-friendly values: integers, rational strings,
lists of integers (finite sets) and coefficient lists (polynomials
``f(k) = sum c_i k^i``; two-variable ``f(j, k) = sum c[a][b] j^a k^b``).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Dict, List, Mapping

from stirkit.errors import DomainError, UnknownIdentity
from stirkit.iverson import (
    TRUE,
    And,
    InRange,
    InSet,
    Divides,
    Prime,
    SumSpec,
    eq,
    ge,
    le,
    prod_brackets,
    sum_brackets,
)
from stirkit.numbers import binomial
from stirkit.oracles import is_prime_trial


@dataclass
class IdentityReport:
    identity_id: str
    params: Dict[str, Any]
    lhs: Any
    rhs: List[Any]
    holds: bool


@dataclass(frozen=True)
class Identity:
    identity_id: str
    name: str
    summary: str
    sides: Callable[[Mapping[str, Any]], tuple]
    sample: Callable[[random.Random], Dict[str, Any]]
    defaults: Mapping[str, Any]


def _poly1(coeffs):
    cs = [Fraction(c) for c in coeffs]
    return lambda k: sum(c * k**i for i, c in enumerate(cs))


def _poly2(coeffs):
    cs = [[Fraction(c) for c in row] for row in coeffs]
    return lambda j, k: sum(c * j**a * k**b for a, row in enumerate(cs) for b, c in enumerate(row))


def _rand_q(rng, span=6, den=4):
    return str(Fraction(rng.randint(-span * den, span * den), rng.randint(1, den)))


def _rand_set(rng, lo=-8, hi=8):
    return sorted(rng.sample(range(lo, hi + 1), rng.randint(0, 6)))


def _rand_coeffs(rng, deg=3):
    return [rng.randint(-5, 5) for _ in range(rng.randint(1, deg + 1))]


def _strong_binomial_term(n, index, z):
    """binomial(n, index) * z**index, with a zero binomial annihilating an undefined power."""
    b = binomial(n, index)
    return 0 if b == 0 else b * z**index


# -- sides ---------------------------------------------------------------------


def _binomial_theorem(p):
    n, z = int(p["n"]), Fraction(p["z"])
    wide = ((-n - 3, 2 * n + 3),)
    rhs = sum_brackets(SumSpec(("k",), TRUE, lambda e: _strong_binomial_term(n, e["k"], z), wide))
    return (1 + z) ** n, [rhs]


def _binomial_shifts(p):
    n, z = int(p["n"]), Fraction(p["z"])
    h = n // 2
    wide = ((-n - 3, 2 * n + 3),)
    forms = [
        lambda e: _strong_binomial_term(n, e["k"], z),
        lambda e: _strong_binomial_term(n, e["k"] + 1, z),
        lambda e: _strong_binomial_term(n, h - e["k"], z),
    ]
    return (1 + z) ** n, [sum_brackets(SumSpec(("k",), TRUE, f, wide)) for f in forms]


def _zero_terms(p):
    n = int(p["n"])
    term = lambda e: e["k"] * (e["k"] - 1) * (n - e["k"])
    narrow = sum_brackets(SumSpec(("k",), InRange("k", 2, n - 1), term))
    full = sum_brackets(SumSpec(("k",), And((ge("k", 0), le("k", n))), term))
    return narrow, [full]


def _absorb(p):
    k = int(p["k"])
    return k * (1 if k >= 0 else 0), [k * (1 if k >= 1 else 0)]


def _union_axiom(p):
    a, b = set(p["A"]), set(p["B"])
    f = _poly1(p["f"])
    term = lambda e: f(e["k"])
    s = lambda members: sum_brackets(SumSpec(("k",), InSet("k", members), term))
    return s(a) + s(b), [s(a | b) + s(a & b)]


def _bracket_union(p):
    a, b = set(p["A"]), set(p["B"])
    universe = a | b | {0}
    window = range(min(universe) - 2, max(universe) + 3)
    ina, inb = InSet("k", a), InSet("k", b)
    inu, ini = InSet("k", a | b), InSet("k", a & b)
    lhs = tuple(ina.holds({"k": k}) + inb.holds({"k": k}) for k in window)
    rhs = tuple(inu.holds({"k": k}) + ini.holds({"k": k}) for k in window)
    return lhs, [rhs]


def _interchange(p):
    n = int(p["n"])
    f = _poly2(p["f"])
    term = lambda e: f(e["j"], e["k"])
    by_rows = sum_brackets(SumSpec(("j", "k"), And((InRange("j", 1, n), InRange("k", 1, "j"))), term))
    by_cols = sum_brackets(SumSpec(("k", "j"), And((InRange("k", 1, n), InRange("j", "k", n))), term))
    direct = sum(f(j, k) for j in range(1, n + 1) for k in range(1, j + 1))
    return direct, [by_rows, by_cols]


def _parity(p):
    k = int(p["k"])
    span = ((-abs(k) - 2, abs(k) + 2),)
    twice = lambda e: 2 * e["m"]
    twice_plus = lambda e: 2 * e["m"] + 1
    evens = sum_brackets(SumSpec(("m",), eq("k", twice), lambda e: 1, span), {"k": k})
    odds = sum_brackets(SumSpec(("m",), eq("k", twice_plus), lambda e: 1, span), {"k": k})
    return (int(k % 2 == 0), int(k % 2 == 1)), [(evens, odds)]


def _split_parity(p):
    lo, hi = int(p["lo"]), int(p["hi"])
    g = _poly1(p["f"])
    f = lambda k: g(k) if lo <= k <= hi else 0
    whole = sum_brackets(SumSpec(("k",), InRange("k", lo, hi), lambda e: g(e["k"])))
    span = ((min(lo, 0) // 2 - 2, max(hi, 0) // 2 + 2),)
    even = sum_brackets(SumSpec(("m",), TRUE, lambda e: f(2 * e["m"]), span))
    odd = sum_brackets(SumSpec(("m",), TRUE, lambda e: f(2 * e["m"] + 1), span))
    return whole, [even + odd]


def _floor_lg(k):
    return k.bit_length() - 1


def _lg_binomials(p):
    n = int(p["n"])
    top = 2 ** (n + 1) - 1
    lhs = sum_brackets(SumSpec(("k",), ge("k", 1), lambda e: binomial(n, _floor_lg(e["k"])), ((1, top),)))
    # sum over m, k of binomial(n, m) [2^m <= k < 2^(m+1)] [k >= 1]
    double = sum_brackets(
        SumSpec(
            ("m", "k"),
            And((ge("k", 1), le(lambda e: 2 ** e["m"], "k"), le("k", lambda e: 2 ** (e["m"] + 1) - 1))),
            lambda e: binomial(n, e["m"]),
            ((0, n), (1, top)),
        )
    )
    weighted = sum(binomial(n, m) * 2**m for m in range(n + 1))
    return lhs, [double, weighted, 3**n]


def _binomial_xy(p):
    n, x, y = int(p["n"]), Fraction(p["x"]), Fraction(p["y"])
    rhs = sum_brackets(
        SumSpec(("k",), InRange("k", 0, n), lambda e: binomial(n, e["k"]) * x ** e["k"] * y ** (n - e["k"]))
    )
    return (x + y) ** n, [rhs]


def _prime_reciprocals(p):
    x = int(p["x"])
    # declared support starts at 0 on purpose: 1/p is undefined there, and the
    # false [p prime] must annihilate it
    spec = SumSpec(("p",), And((Prime("p"), le("p", x))), lambda e: Fraction(1, e["p"]), ((0, max(x, 0)),))
    direct = sum((Fraction(1, q) for q in range(2, x + 1) if is_prime_trial(q)), Fraction(0))
    return sum_brackets(spec), [direct]


def _squarefree_kernel(p):
    n = int(p["n"])
    kernel = prod_brackets(SumSpec(("p",), And((Prime("p"), Divides("p", n))), lambda e: e["p"]))
    direct, m, q = 1, n, 2
    while m > 1:
        if m % q == 0:
            direct *= q
            while m % q == 0:
                m //= q
        q += 1
    return kernel, [direct]


def _s(**kw):
    return lambda rng: {k: v(rng) for k, v in kw.items()}


CATALOG: Dict[str, Identity] = {}


def _register(identity_id, name, summary, sides, sample, **defaults):
    CATALOG[identity_id] = Identity(identity_id, name, summary, sides, sample, defaults)


_register(
    "1.2", "binomial-theorem-all-k", "(1+z)^n = sum over all k of binomial(n,k) z^k",
    _binomial_theorem, _s(n=lambda r: r.randint(0, 12), z=_rand_q), n=5, z="1/2",
)
_register(
    "1.3", "binomial-theorem-shifts", "index shifts k -> k+1 and k -> floor(n/2)-k leave the sum unchanged",
    _binomial_shifts, _s(n=lambda r: r.randint(0, 12), z=_rand_q), n=6, z="-2/3",
)
_register(
    "1.5", "harmless-zero-terms", "sum_{2<=k<=n-1} k(k-1)(n-k) = sum_{0<=k<=n} k(k-1)(n-k)",
    _zero_terms, _s(n=lambda r: r.randint(0, 40)), n=2,
)
_register(
    "1.8", "absorb-bound", "k[k>=0] = k[k>=1]",
    _absorb, _s(k=lambda r: r.randint(-50, 50)), k=0,
)
_register(
    "1.9", "union-intersection-sums", "sum over A plus sum over B = sum over union plus sum over intersection",
    _union_axiom, _s(A=_rand_set, B=_rand_set, f=_rand_coeffs), A=[1, 2, 3], B=[2, 3, 5], f=[0, 0, 1],
)
_register(
    "1.10", "union-intersection-brackets", "[k in A] + [k in B] = [k in A|B] + [k in A&B] pointwise",
    _bracket_union, _s(A=_rand_set, B=_rand_set), A=[1, 2, 3], B=[2, 3, 5],
)
_register(
    "1.11", "interchange-order", "sum_{j<=n} sum_{k<=j} f(j,k) = sum_{k<=n} sum_{k<=j<=n} f(j,k)",
    _interchange,
    _s(n=lambda r: r.randint(0, 9), f=lambda r: [[r.randint(-4, 4) for _ in range(3)] for _ in range(3)]),
    n=4, f=[[0, 0], [0, 1]],
)
_register(
    "1.12", "parity-brackets", "[k even] = sum_m [k=2m] and [k odd] = sum_m [k=2m+1]",
    _parity, _s(k=lambda r: r.randint(-20, 20)), k=7,
)
_register(
    "1.13", "split-by-parity", "sum_k f(k) = sum_m f(2m) + sum_m f(2m+1)",
    _split_parity,
    lambda r: (lambda lo: {"lo": lo, "hi": lo + r.randint(-1, 12), "f": _rand_coeffs(r)})(r.randint(-10, 10)),
    lo=-3, hi=7, f=[1, 2, 3],
)
_register(
    "1.14", "floor-lg-binomials", "sum_{k>=1} binomial(n, floor(lg k)) = 3^n",
    _lg_binomials, _s(n=lambda r: r.randint(0, 7)), n=3,
)
_register(
    "1.15", "squarefree-kernel", "product of p^([p prime][p divides n]) is the largest squarefree divisor",
    _squarefree_kernel, _s(n=lambda r: r.randint(1, 400)), n=12,
)
_register(
    "1.18", "binomial-theorem-zero-power", "(x+y)^n = sum_k binomial(n,k) x^k y^(n-k) with 0^0 = 1",
    _binomial_xy,
    _s(
        n=lambda r: r.randint(0, 10),
        x=lambda r: "0" if r.random() < 0.3 else _rand_q(r),
        y=lambda r: "0" if r.random() < 0.3 else _rand_q(r),
    ),
    n=5, x="0", y="1",
)
_register(
    "1.19", "prime-reciprocals", "sum_p [p prime][p <= x]/p with a strong zero at p = 0",
    _prime_reciprocals, _s(x=lambda r: r.randint(0, 120)), x=10,
)

_BY_NAME = {ident.name: ident for ident in CATALOG.values()}


def lookup(identity_id: str) -> Identity:
    ident = CATALOG.get(identity_id) or _BY_NAME.get(identity_id)
    if ident is None:
        raise UnknownIdentity(identity_id)
    return ident


def verify_identity(identity_id: str, params: Mapping[str, Any] = None) -> IdentityReport:
    """Evaluate both sides of a catalog identity exactly; missing parameters use defaults."""
    ident = lookup(identity_id)
    merged = dict(ident.defaults)
    merged.update(params or {})
    unknown = set(merged) - set(ident.defaults)
    if unknown:
        raise DomainError(f"unknown parameters for {ident.identity_id}: {sorted(unknown)}")
    lhs, rhs = ident.sides(merged)
    return IdentityReport(ident.identity_id, merged, lhs, list(rhs), all(r == lhs for r in rhs))


def sample_params(identity_id: str, rng: random.Random) -> Dict[str, Any]:
    return lookup(identity_id).sample(rng)
