"""Self-verification suites behind ``stirkit verify``.

Each check is a named zero-argument callable returning ``(ok, detail)``.
Randomness comes from a ``random.Random`` seeded by the suite seed and the
check name, so a report depends only on ``(suite, seed, max_n)``.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List, Optional

from stirkit.errors import CapExceeded
from stirkit import analysis, identities, iverson, oracles, stirling_poly
from stirkit.numbers import binomial, stirling_cycle, stirling_subset
from stirkit.poly import UniPoly

SUITES = ("iverson", "stirling", "analysis", "oracles")

# values of cycle(n, k) for n, k = -4..4, rows by n and columns by k
LOGAN_WINDOW = (
    (1, 0, 0, 0, 0, 0, 0, 0, 0),
    (6, 1, 0, 0, 0, 0, 0, 0, 0),
    (7, 3, 1, 0, 0, 0, 0, 0, 0),
    (1, 1, 1, 1, 0, 0, 0, 0, 0),
    (0, 0, 0, 0, 1, 0, 0, 0, 0),
    (0, 0, 0, 0, 0, 1, 0, 0, 0),
    (0, 0, 0, 0, 0, 1, 1, 0, 0),
    (0, 0, 0, 0, 0, 2, 3, 1, 0),
    (0, 0, 0, 0, 0, 6, 11, 6, 1),
)

IDENTITY_INSTANCES = 200


@dataclass
class CheckResult:
    suite: str
    name: str
    ok: bool
    detail: str = ""


class _Context:
    def __init__(self, seed: int, max_n: Optional[int]):
        self.seed = seed
        self.max_n = max_n

    def rng(self, name: str) -> random.Random:
        return random.Random(f"{self.seed}:{name}")

    def lim(self, default: int) -> int:
        return default if self.max_n is None else max(0, min(default, self.max_n))


def _first_failure(cases):
    """(ok, detail) for an iterable of (label, holds) pairs."""
    count = 0
    for label, holds in cases:
        count += 1
        if not holds:
            return False, f"fails at {label}"
    return True, f"{count} cases"


# -- iverson -------------------------------------------------------------------


def _identity_check(ctx, identity_id):
    def run():
        rng = ctx.rng("identity " + identity_id)
        cases = []
        for _ in range(IDENTITY_INSTANCES):
            params = identities.sample_params(identity_id, rng)
            cases.append((params, identities.verify_identity(identity_id, params).holds))
        return _first_failure(cases)

    return run


def _iverson_checks(ctx):
    checks = [(f"identity {i} ({identities.CATALOG[i].name})", _identity_check(ctx, i)) for i in identities.CATALOG]
    xs, ms = ctx.lim(20), ctx.lim(40)
    checks.append(
        (
            "libri divisor",
            lambda: _first_failure(
                ((m, x), iverson.libri_divisor(m, x) == int(m % x == 0))
                for x in range(1, xs + 1)
                for m in range(1, ms + 1)
            ),
        )
    )
    checks.append(
        (
            "libri P_k",
            lambda: _first_failure(
                ((k, x), iverson.libri_P(k, x) == int(k % x == 0) - int((k - 1) % x == 0))
                for x in range(1, ctx.lim(12) + 1)
                for k in range(1, ctx.lim(40) + 1)
            ),
        )
    )
    checks.append(
        (
            "power sums mod p",
            lambda: _first_failure(
                ((p, k), iverson.power_sum_mod(p, k) == ((p - 1) * int(k % (p - 1) == 0)) % p)
                for p in range(2, 51)
                if oracles.is_prime_trial(p)
                for k in range(1, 21)
            ),
        )
    )
    return checks


# -- stirling ------------------------------------------------------------------


def _half_integer_routes():
    # g_k(1/2) = subset(beta, beta-k) at beta = k - 1/2, read off the series
    for k in range(13):
        via_series = analysis.subset_diagonal_values(Fraction(2 * k - 1, 2), k + 1)[k]
        yield k, via_series == stirling_poly.cycle_poly(k)(Fraction(1, 2))


def _stirling_checks(ctx):
    w = ctx.lim(12)
    return [
        (
            "logan window",
            lambda: _first_failure(
                ((n, k), stirling_cycle(n, k) == LOGAN_WINDOW[n + 4][k + 4])
                for n in range(-4, 5)
                for k in range(-4, 5)
            ),
        ),
        (
            "duality subset(n,k) = cycle(-k,-n)",
            lambda: _first_failure(
                ((n, k), stirling_subset(n, k) == stirling_cycle(-k, -n))
                for n in range(-w, w + 1)
                for k in range(-w, w + 1)
            ),
        ),
        (
            "recurrences on the whole plane",
            lambda: _first_failure(
                (
                    (n, k),
                    stirling_cycle(n, k) == (n - 1) * stirling_cycle(n - 1, k) + stirling_cycle(n - 1, k - 1)
                    and stirling_subset(n, k) == k * stirling_subset(n - 1, k) + stirling_subset(n - 1, k - 1),
                )
                for n in range(-w, w + 1)
                for k in range(-w, w + 1)
                if (n, k) != (0, 0)
            ),
        ),
        (
            "stirling polynomials match the tables",
            lambda: _first_failure(
                (
                    (k, n),
                    stirling_poly.cycle_poly(k)(n) == stirling_cycle(n, n - k)
                    and stirling_poly.subset_poly(k)(n) == stirling_subset(n + k, n),
                )
                for k in range(ctx.lim(6) + 1)
                for n in range(-10, 11)
            ),
        ),
        (
            "polynomial duality f_k(n) = g_k(-n)",
            lambda: _first_failure(
                (k, stirling_poly.subset_poly(k) == stirling_poly.cycle_poly(k).compose(UniPoly([0, -1])))
                for k in range(ctx.lim(8) + 1)
            ),
        ),
        (
            "kramp sums vs symmetric function oracles",
            lambda: _first_failure(
                (
                    (k, n),
                    stirling_poly.kramp_C(k)(n) == oracles.elem_sym(n, k)
                    and stirling_poly.kramp_Gamma(k)(n) == oracles.complete_hom(n, k),
                )
                for k in range(ctx.lim(6) + 1)
                for n in range(ctx.lim(8) + 1)
            ),
        ),
        (
            "kramp recurrence",
            lambda: _first_failure((m, stirling_poly.kramp_recurrence_check(m)) for m in range(1, ctx.lim(6) + 1)),
        ),
        (
            "kramp polynomial duality",
            lambda: _first_failure((k, stirling_poly.duality_poly_check(k)) for k in range(ctx.lim(6) + 1)),
        ),
        (
            "generating series for subset(a, a-k)",
            lambda: _first_failure(enumerate(analysis.log_series_identity_check(ctx.lim(8)))),
        ),
        ("g_k(1/2) by two routes", lambda: _first_failure(_half_integer_routes())),
        (
            "half-integer growth witnesses up to k = 40",
            lambda: (
                stirling_poly.half_integer_growth(40) == [39],
                f"witnesses {stirling_poly.half_integer_growth(40)}",
            ),
        ),
    ]


# -- analysis ------------------------------------------------------------------


def _rand_poly(rng, deg):
    return [Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(deg + 1)]


def _basis_round_trips(rng):
    for deg in range(11):
        p = _rand_poly(rng, deg)
        for basis in ("falling", "rising"):
            there = analysis.convert(p, "power", basis)
            back = analysis.convert(there, basis, "power")
            yield (deg, basis), UniPoly(back) == UniPoly(p)


def _positive_rational(rng):
    return Fraction(rng.randint(1, 60), rng.randint(1, 12))


def _reciprocal_cases(ctx):
    rng = ctx.rng("reciprocal series")
    for _ in range(50):
        z = _positive_rational(rng)
        for n in range(1, ctx.lim(20) + 1):
            partial, rem = analysis.reciprocal_series(z, n)
            zs = [rng.randint(1, 5) for _ in range(n)]
            yield (z, n), partial + rem == 1 / z and analysis.nicole_check(z, zs)


def _falling_law(ctx):
    rng = ctx.rng("falling law")
    for _ in range(200):
        z = Fraction(rng.randint(-40, 40), rng.randint(1, 7))
        m, n = rng.randint(-5, 5), rng.randint(-5, 5)
        try:
            lhs = analysis.falling(z, m + n)
            rhs = analysis.falling(z, m) * analysis.falling(z - m, n)
        except ZeroDivisionError:
            continue
        yield (z, m, n), lhs == rhs


def _error_orders():
    for alpha in (Fraction(1, 2), Fraction(-1, 2), Fraction(1, 3)):
        for kind in ("rising", "falling"):
            for m in range(1, 6):
                j = m + 1
                while stirling_poly.cycle_poly(j)(alpha) == 0:
                    j += 1
                ratio = analysis.asym_relative_error(10, alpha, m, kind) / analysis.asym_relative_error(
                    100, alpha, m, kind
                )
                yield (alpha, kind, m), 10**j / 3 <= ratio <= 3 * 10**j


def _real_power_accuracy():
    for z, a, kind in ((5.0, 3, "falling"), (10.0, 0.5, "rising"), (7.25, -1.5, "falling"), (3.5, 2.25, "rising")):
        got = analysis.factorial_power_real(z, a, kind)
        ref = float(analysis.gamma_ratio_reference(z, a, kind))
        yield (z, a, kind), abs(got - ref) <= 1e-12 * abs(ref)


def _analysis_checks(ctx):
    def asym_half():
        v, _ = analysis.asym_factorial_power(100.0, Fraction(1, 2), 5, "rising")
        ref = math.exp(math.lgamma(100.5) - math.lgamma(100.0))
        err = abs(v - ref) / ref
        return err <= 1e-7, f"relative error {err:.3g}"

    def sqrt10():
        r = analysis.generalized_power_series(10.0, 0.5, terms=200)
        err = abs(r.value - math.sqrt(10)) / math.sqrt(10)
        return err <= 1e-6, f"relative error {err:.3g} after {r.terms_used} terms"

    def integer_alpha():
        cases = []
        for n in range(8):
            for z in (0.5, 2.0, 7.0):
                v = analysis.generalized_power_series(z, n).value
                exact = sum(stirling_subset(n, k) * analysis.falling(Fraction(z), k) for k in range(n + 1))
                cases.append(((n, z), v == float(exact) and exact == Fraction(z) ** n))
        return _first_failure(cases)

    def minus_one():
        # with alpha = -1 the m+1 terms are the m+1 term partial sum of the reciprocal series
        r = analysis.generalized_power_series(2.0, -1.0, terms=40)
        _, rem = analysis.reciprocal_series(2, 41)
        err = abs(r.value - (0.5 - float(rem)))
        return err <= 1e-12, f"value {r.value!r}, exact remainder {float(rem):.6g}"

    def negative_powers():
        first = analysis.negative_power_series(1.0, -1, 1)
        errs = [abs(analysis.negative_power_series(3.0, -2, m) - 1 / 9) for m in (10, 40, 100, 400)]
        ok = first == 0.5 and all(a > b for a, b in zip(errs, errs[1:])) and errs[-1] < 1e-6
        return ok, "errors " + ", ".join(f"{e:.3g}" for e in errs)

    return [
        ("basis round trips", lambda: _first_failure(_basis_round_trips(ctx.rng("basis")))),
        (
            "z^3 in the falling basis",
            lambda: (analysis.power_to_falling([0, 0, 0, 1]) == [0, 1, 3, 1], "coefficients 0 1 3 1"),
        ),
        ("reciprocal series and nicole expansion", lambda: _first_failure(_reciprocal_cases(ctx))),
        ("falling(z, m+n) law", lambda: _first_failure(_falling_law(ctx))),
        ("kramp expansion", lambda: _first_failure((n, analysis.kramp_expansion_check(n)) for n in range(-4, 6))),
        ("real factorial powers vs high precision", lambda: _first_failure(_real_power_accuracy())),
        ("asymptotic value at z = 100", asym_half),
        ("asymptotic error order", lambda: _first_failure(_error_orders())),
        ("generalized series at alpha = 1/2", sqrt10),
        ("generalized series at integer alpha", integer_alpha),
        ("generalized series at alpha = -1", minus_one),
        ("negative power series converges", negative_powers),
    ]


# -- oracles -------------------------------------------------------------------


def _reciprocity(poset):
    p = poset.size
    weak = oracles.order_poly(poset)
    strict = oracles.order_poly(poset, strict=True)
    return weak.compose(UniPoly([0, -1])) == strict * (-1) ** p


def _oracle_checks(ctx):
    def random_posets():
        rng = ctx.rng("random posets")
        posets = [oracles.random_poset(rng.randint(1, 6), rng) for _ in range(20)]
        return _first_failure((oracles.format_poset(P).replace("\n", "; "), _reciprocity(P)) for P in posets)

    return [
        (
            "spot values 11, 7, 50, 90",
            lambda: (
                (
                    oracles.count_perms_by_cycles(4, 2),
                    oracles.count_set_partitions(4, 2),
                    oracles.elem_sym(4, 3),
                    oracles.complete_hom(3, 3),
                )
                == (11, 7, 50, 90),
                "",
            ),
        ),
        (
            "permutations by cycles",
            lambda: _first_failure(
                ((n, k), oracles.count_perms_by_cycles(n, k) == stirling_cycle(n, k))
                for n in range(ctx.lim(8) + 1)
                for k in range(n + 2)
            ),
        ),
        (
            "set partitions by blocks",
            lambda: _first_failure(
                ((n, k), oracles.count_set_partitions(n, k) == stirling_subset(n, k))
                for n in range(ctx.lim(10) + 1)
                for k in range(n + 2)
            ),
        ),
        (
            "symmetric sums as shifted stirling numbers",
            lambda: _first_failure(
                (
                    (n, k),
                    oracles.elem_sym(n, k) == stirling_cycle(n + 1, n + 1 - k)
                    and oracles.complete_hom(n, k) == stirling_subset(n + k, n),
                )
                for n in range(ctx.lim(8) + 1)
                for k in range(6)
            ),
        ),
        (
            "fence posets count stirling numbers",
            lambda: _first_failure(
                (
                    (k, n),
                    oracles.omega(oracles.fence_poset(k), n) == stirling_subset(n + k, n)
                    and oracles.omega_bar(oracles.fence_poset(k), n) == stirling_cycle(n, n - k)
                    and oracles.fence_sum_weak(k, n) == oracles.omega(oracles.fence_poset(k), n)
                    and oracles.fence_sum_strict(k, n) == oracles.omega_bar(oracles.fence_poset(k), n),
                )
                for k in range(1, 4)
                for n in range(ctx.lim(6) + 1)
            ),
        ),
        (
            "chains and antichains",
            lambda: _first_failure(
                (
                    (p, n),
                    oracles.omega(oracles.chain(p), n) == binomial(n + p - 1, p)
                    and oracles.omega_bar(oracles.chain(p), n) == binomial(n, p)
                    and oracles.omega(oracles.antichain(p), n) == n**p,
                )
                for p in range(1, 5)
                for n in range(6)
            ),
        ),
        ("reciprocity for fence posets", lambda: _first_failure((k, _reciprocity(oracles.fence_poset(k))) for k in (1, 2, 3))),
        ("reciprocity for random posets", random_posets),
    ]


_BUILDERS = {
    "iverson": _iverson_checks,
    "stirling": _stirling_checks,
    "analysis": _analysis_checks,
    "oracles": _oracle_checks,
}


def run_suite(suite: str, seed: int = 0, max_n: Optional[int] = None) -> List[CheckResult]:
    """Run one suite (or ``"all"``) and return results in a fixed order."""
    names = SUITES if suite == "all" else (suite,)
    ctx = _Context(seed, max_n)
    results = []
    for name in names:
        for label, check in _BUILDERS[name](ctx):
            try:
                ok, detail = check()
            except CapExceeded:
                raise
            except Exception as exc:  # a crash is a failed check, not a crashed report
                ok, detail = False, f"{type(exc).__name__}: {exc}"
            results.append(CheckResult(name, label, bool(ok), detail))
    return results
