"""Iverson brackets with strong-zero semantics and finite-support bracket sums.

A :class:`Predicate` is an immutable syntax tree over integer variables.
Operands ("terms") may be

* ``int`` or ``Fraction`` constants,
* ``str`` variable names, looked up in the assignment,
* any callable ``f(env)``; if it also has a ``free_vars()`` method, support
  derivation can tell whether it mentions the summation variable.

A false bracket is a strong zero: :func:`guarded_term` never evaluates the
co-factor when the guard fails.  ``1 - [P]`` is written ``~P`` so that the
complement is itself a bracket rather than a strong one.
"""

from __future__ import annotations

import itertools
import math
import operator
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, FrozenSet, Mapping, Optional, Sequence, Tuple

from stirkit.config import check_cap
from stirkit.errors import DomainError, SupportError, UnboundVariable
from stirkit.oracles import is_prime_trial


def _value(term, env: Mapping[str, object]):
    if isinstance(term, bool):
        return int(term)
    if isinstance(term, (int, Fraction)):
        return term
    if isinstance(term, str):
        try:
            return env[term]
        except KeyError:
            raise UnboundVariable(term) from None
    if callable(term):
        return term(env)
    raise TypeError(f"unsupported term {term!r}")


def _term_vars(term) -> FrozenSet[str]:
    if isinstance(term, str):
        return frozenset([term])
    if isinstance(term, (int, Fraction)):
        return frozenset()
    free = getattr(term, "free_vars", None)
    if free is None:
        return None  # opaque callable: unknown dependencies
    return frozenset(free())


def _integer(v, what):
    if isinstance(v, Fraction):
        if v.denominator != 1:
            raise DomainError(f"{what} needs an integer, got {v}")
        return v.numerator
    if isinstance(v, int):
        return v
    raise DomainError(f"{what} needs an integer, got {v!r}")


class Predicate:
    """Base class; subclasses implement ``holds`` and ``free_vars``."""

    def holds(self, env: Mapping[str, object]) -> bool:
        raise NotImplementedError

    def free_vars(self):
        raise NotImplementedError

    def __and__(self, other):
        return And((self, other))

    def __or__(self, other):
        return Or((self, other))

    def __invert__(self):
        return Not(self)


@dataclass(frozen=True)
class Const(Predicate):
    value: bool

    def holds(self, env):
        return self.value

    def free_vars(self):
        return frozenset()


TRUE = Const(True)
FALSE = Const(False)

_OPS = {
    "<": operator.lt,
    "<=": operator.le,
    "=": operator.eq,
    "!=": operator.ne,
    ">=": operator.ge,
    ">": operator.gt,
}
_FLIP = {"<": ">", "<=": ">=", "=": "=", "!=": "!=", ">=": "<=", ">": "<"}


@dataclass(frozen=True)
class Compare(Predicate):
    op: str
    left: object
    right: object

    def __post_init__(self):
        if self.op not in _OPS:
            raise DomainError(f"unknown comparison {self.op!r}")

    def holds(self, env):
        return _OPS[self.op](_value(self.left, env), _value(self.right, env))

    def free_vars(self):
        return _union(_term_vars(self.left), _term_vars(self.right))


@dataclass(frozen=True)
class Divides(Predicate):
    """``divisor`` divides ``dividend``; 0 divides only 0."""

    divisor: object
    dividend: object

    def holds(self, env):
        d = _integer(_value(self.divisor, env), "divides")
        n = _integer(_value(self.dividend, env), "divides")
        return n == 0 if d == 0 else n % d == 0

    def free_vars(self):
        return _union(_term_vars(self.divisor), _term_vars(self.dividend))


@dataclass(frozen=True)
class Prime(Predicate):
    x: object

    def holds(self, env):
        v = _value(self.x, env)
        if isinstance(v, Fraction):
            v = v.numerator if v.denominator == 1 else None
        return isinstance(v, int) and is_prime_trial(v)

    def free_vars(self):
        return _union(_term_vars(self.x))


@dataclass(frozen=True)
class Even(Predicate):
    x: object

    def holds(self, env):
        return _integer(_value(self.x, env), "even") % 2 == 0

    def free_vars(self):
        return _union(_term_vars(self.x))


@dataclass(frozen=True)
class Odd(Predicate):
    x: object

    def holds(self, env):
        return _integer(_value(self.x, env), "odd") % 2 == 1

    def free_vars(self):
        return _union(_term_vars(self.x))


@dataclass(frozen=True)
class InRange(Predicate):
    """lo <= x <= hi."""

    x: object
    lo: object
    hi: object

    def holds(self, env):
        return _value(self.lo, env) <= _value(self.x, env) <= _value(self.hi, env)

    def free_vars(self):
        return _union(_term_vars(self.x), _term_vars(self.lo), _term_vars(self.hi))


@dataclass(frozen=True)
class InSet(Predicate):
    x: object
    members: FrozenSet

    def __init__(self, x, members):
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "members", frozenset(members))

    def holds(self, env):
        return _value(self.x, env) in self.members

    def free_vars(self):
        return _union(_term_vars(self.x))


@dataclass(frozen=True)
class And(Predicate):
    parts: Tuple[Predicate, ...]

    def holds(self, env):
        return all(p.holds(env) for p in self.parts)

    def free_vars(self):
        return _union(*(p.free_vars() for p in self.parts))


@dataclass(frozen=True)
class Or(Predicate):
    parts: Tuple[Predicate, ...]

    def holds(self, env):
        return any(p.holds(env) for p in self.parts)

    def free_vars(self):
        return _union(*(p.free_vars() for p in self.parts))


@dataclass(frozen=True)
class Not(Predicate):
    inner: Predicate

    def holds(self, env):
        return not self.inner.holds(env)

    def free_vars(self):
        return self.inner.free_vars()


def _union(*sets):
    if any(s is None for s in sets):
        return None
    out = frozenset()
    for s in sets:
        out |= s
    return out


def lt(a, b):
    return Compare("<", a, b)


def le(a, b):
    return Compare("<=", a, b)


def eq(a, b):
    return Compare("=", a, b)


def ne(a, b):
    return Compare("!=", a, b)


def ge(a, b):
    return Compare(">=", a, b)


def gt(a, b):
    return Compare(">", a, b)


def conjuncts(p: Predicate):
    if isinstance(p, And):
        for q in p.parts:
            yield from conjuncts(q)
    else:
        yield p


# -- evaluation ---------------------------------------------------------------


def bracket(p: Predicate, assignment: Optional[Mapping[str, object]] = None) -> int:
    """1 if the predicate holds under the assignment, else 0."""
    return 1 if p.holds(assignment or {}) else 0


def _check_exact(v):
    if isinstance(v, float):
        raise DomainError("bracket sums are exact; a term returned a float")
    return v


def guarded_term(p: Predicate, term, assignment: Optional[Mapping[str, object]] = None):
    """[p] * term with guard-first evaluation: a false guard returns 0 and never touches ``term``."""
    env = assignment or {}
    if not p.holds(env):
        return 0
    return _check_exact(term(env) if callable(term) else term)


# -- sums and products --------------------------------------------------------


@dataclass(frozen=True)
class SumSpec:
    """A bracket sum/product over integer ``variables``.

    ``support`` is one inclusive ``(lo, hi)`` interval per variable, whose
    ends may be terms evaluated in the outer assignment.  When omitted, it
    is derived from the guard's conjunction of simple bounds.
    """

    variables: Tuple[str, ...]
    guard: Predicate
    term: Callable
    support: Optional[Tuple[Tuple[object, object], ...]] = None

    def __post_init__(self):
        if isinstance(self.variables, str):
            object.__setattr__(self, "variables", (self.variables,))
        if self.support is not None and len(self.support) != len(self.variables):
            raise DomainError("support needs one interval per variable")


def _bound_from_compare(c: Compare, var: str, lookup):
    """(lower, upper) implied on ``var`` by a comparison, or None."""
    for left, op, right in ((c.left, c.op, c.right), (c.right, _FLIP[c.op], c.left)):
        if left != var or not isinstance(left, str):
            continue
        rv = lookup(right)
        if rv is None:
            return None
        lo, hi = rv
        if op == "<=":
            return None, hi
        if op == "<":
            return None, hi - 1
        if op == ">=":
            return lo, None
        if op == ">":
            return lo + 1, None
        if op == "=":
            return lo, hi
    return None


def _floor(v):
    return math.floor(v)


def _ceil(v):
    return math.ceil(v)


def derive_support(guard: Predicate, variables: Sequence[str], env: Mapping[str, object]):
    """Box of integer intervals outside which ``guard`` is false.

    Recognized conjuncts: comparisons between a summation variable and a
    term free of summation variables (or another summation variable whose
    interval is already known), ``InRange``, ``InSet``, ``Prime`` (x >= 2),
    and ``Divides(var, c)`` with ``c != 0`` (|var| <= |c|).  Raises
    :class:`SupportError` if some variable stays unbounded.
    """
    variables = tuple(variables)
    box: Dict[str, list] = {v: [None, None] for v in variables}

    def lookup(term):
        # interval of possible values of `term`, or None when unknown
        deps = _term_vars(term)
        if deps is None:
            return None
        inner = deps & set(variables)
        if not inner:
            v = _value(term, env)
            return v, v
        if isinstance(term, str):
            lo, hi = box[term]
            if lo is None or hi is None:
                return None
            return lo, hi
        return None

    def tighten(var, lo, hi):
        cur = box[var]
        changed = False
        if lo is not None:
            lo = _ceil(lo)
            if cur[0] is None or lo > cur[0]:
                cur[0] = lo
                changed = True
        if hi is not None:
            hi = _floor(hi)
            if cur[1] is None or hi < cur[1]:
                cur[1] = hi
                changed = True
        return changed

    parts = list(conjuncts(guard))
    for _ in range(len(variables) + 2):
        changed = False
        for c in parts:
            for var in variables:
                if isinstance(c, Compare):
                    b = _bound_from_compare(c, var, lookup)
                    if b:
                        changed |= tighten(var, *b)
                elif isinstance(c, InRange) and c.x == var:
                    lo, hi = lookup(c.lo), lookup(c.hi)
                    changed |= tighten(var, lo[0] if lo else None, hi[1] if hi else None)
                elif isinstance(c, InSet) and c.x == var and c.members:
                    changed |= tighten(var, min(c.members), max(c.members))
                elif isinstance(c, InSet) and c.x == var:
                    changed |= tighten(var, 0, -1)
                elif isinstance(c, Prime) and c.x == var:
                    changed |= tighten(var, 2, None)
                elif isinstance(c, Divides) and c.divisor == var:
                    nv = lookup(c.dividend)
                    if nv and nv[0] == nv[1] and nv[0] != 0:
                        m = abs(_integer(nv[0], "divides"))
                        changed |= tighten(var, -m, m)
                elif isinstance(c, Const) and not c.value:
                    changed |= tighten(var, 0, -1)
        if not changed:
            break
    out = []
    for var in variables:
        lo, hi = box[var]
        if lo is None or hi is None:
            raise SupportError(f"cannot derive a finite range for {var!r} from the guard")
        out.append((lo, hi))
    return tuple(out)


def _resolve_support(spec: SumSpec, env):
    if spec.support is None:
        return derive_support(spec.guard, spec.variables, env), False
    box = []
    for lo, hi in spec.support:
        lo_v = _integer(_value(lo, env), "support bound")
        hi_v = _integer(_value(hi, env), "support bound")
        box.append((lo_v, hi_v))
    return tuple(box), True


def _points(box):
    return itertools.product(*(range(lo, hi + 1) for lo, hi in box))


def _size(box):
    n = 1
    for lo, hi in box:
        n *= max(0, hi - lo + 1)
    return n


def _shell(box):
    """Integer points just outside each face of the box."""
    for i, (lo, hi) in enumerate(box):
        others = box[:i] + box[i + 1:]
        for edge in (lo - 1, hi + 1):
            for rest in _points(others):
                yield rest[:i] + (edge,) + rest[i:]


def _scan(spec: SumSpec, env, neutral, combine, probe_ok):
    env = dict(env or {})
    box, declared = _resolve_support(spec, env)
    check_cap("SUM_CAP", _size(box), "bracket sum support")
    acc = neutral
    for point in _points(box):
        local = dict(env)
        local.update(zip(spec.variables, point))
        if spec.guard.holds(local):
            acc = combine(acc, _check_exact(spec.term(local)))
    if declared and _size(box) > 0:
        for point in _shell(box):
            local = dict(env)
            local.update(zip(spec.variables, point))
            if spec.guard.holds(local) and not probe_ok(spec.term(local)):
                raise SupportError(
                    f"nonzero guarded term at {dict(zip(spec.variables, point))} outside the declared support"
                )
    return acc


def sum_brackets(spec: SumSpec, assignment: Optional[Mapping[str, object]] = None):
    """Exact sum of [guard]*term over the support (strong zero outside the guard)."""
    return _scan(spec, assignment, 0, operator.add, lambda v: v == 0)


def prod_brackets(spec: SumSpec, assignment: Optional[Mapping[str, object]] = None):
    """Exact product of term**[guard]; a false guard contributes 1 without evaluating the term."""
    return _scan(spec, assignment, 1, operator.mul, lambda v: v == 1)


def sum_over(var: str, guard: Predicate, term, support=None, **env):
    """Shorthand for a one-variable :func:`sum_brackets`."""
    spec = SumSpec((var,), guard, term, None if support is None else (tuple(support),))
    return sum_brackets(spec, env)


# -- Libri's divisor construction --------------------------------------------


@lru_cache(maxsize=256)
def _libri_row(x: int, k_max: int) -> Tuple[int, ...]:
    # P_0 = 1, P_k = -sum_{j<k} [x > k-j] P_j
    p = [1]
    for k in range(1, k_max + 1):
        p.append(-sum((1 if x > k - j else 0) * p[j] for j in range(k)))
    return tuple(p)


def libri_P(k: int, x: int) -> int:
    """Libri's P_k(x) with 0^(0^(x-j)) read as [x > j]; equals [x|k] - [x|k-1] for k > 0."""
    if k < 0 or x < 1:
        raise DomainError("libri_P needs k >= 0 and x >= 1")
    return _libri_row(x, k)[k]


def libri_divisor(m: int, x: int) -> int:
    """Libri's quotient (1 - sum_{k<m} (m-k)[x > m-k] P_k(x)) / x, which is [x divides m]."""
    if m < 1 or x < 1:
        raise DomainError("libri_divisor needs m >= 1 and x >= 1")
    row = _libri_row(x, m)
    s = sum((m - k) * (1 if x > m - k else 0) * row[k] for k in range(m))
    q = Fraction(1 - s, x)
    if q.denominator != 1:
        raise AssertionError(f"Libri quotient {q} is not an integer")
    return q.numerator


def power_sum_mod(p: int, k: int) -> int:
    """(1^k + 2^k + ... + (p-1)^k) mod p for prime p."""
    if not is_prime_trial(p):
        raise DomainError(f"{p} is not prime")
    if k < 1:
        raise DomainError("k must be positive")
    return sum(pow(m, k, p) for m in range(1, p)) % p
