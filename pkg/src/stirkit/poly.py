"""Univariate polynomials with exact rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence


def _q(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"polynomial coefficients must be exact rationals, got {type(value).__name__}")


class UniPoly:
    """Polynomial stored as ascending coefficients, trailing zeros stripped.

    The zero polynomial has an empty coefficient tuple and degree -1.
    Instances are immutable and hashable.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_q(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("UniPoly is immutable")

    @classmethod
    def constant(cls, c) -> "UniPoly":
        return cls([c])

    @classmethod
    def x(cls) -> "UniPoly":
        return cls([0, 1])

    @classmethod
    def affine(cls, scale, shift) -> "UniPoly":
        """The polynomial ``scale*x + shift``."""
        return cls([shift, scale])

    @classmethod
    def from_roots(cls, roots: Iterable) -> "UniPoly":
        p = cls([1])
        for r in roots:
            p = p * cls([-_q(r), 1])
        return p

    @classmethod
    def binomial(cls, shift, m: int) -> "UniPoly":
        """``binomial(x + shift, m)`` as a polynomial of degree ``m`` in ``x``."""
        if m < 0:
            return cls()
        p = cls.from_roots(-_q(shift) + j for j in range(m))
        fact = 1
        for j in range(2, m + 1):
            fact *= j
        return p / fact

    @classmethod
    def interpolate(cls, xs: Sequence, ys: Sequence) -> "UniPoly":
        """Unique polynomial of degree < len(xs) through the points (Newton form)."""
        if len(xs) != len(ys):
            raise ValueError("xs and ys differ in length")
        xs = [_q(v) for v in xs]
        if len(set(xs)) != len(xs):
            raise ValueError("interpolation nodes must be distinct")
        table = [_q(v) for v in ys]
        n = len(xs)
        # in-place divided differences; table[i] ends as f[x0..xi]
        for level in range(1, n):
            for i in range(n - 1, level - 1, -1):
                table[i] = (table[i] - table[i - 1]) / (xs[i] - xs[i - level])
        result = cls()
        for i in range(n - 1, -1, -1):
            result = result * cls([-xs[i], 1]) + cls([table[i]])
        return result

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __call__(self, x):
        """Horner evaluation; exact for int/Fraction ``x``, float for float ``x``."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose(self, inner: "UniPoly") -> "UniPoly":
        """Return ``self(inner(x))``."""
        acc = UniPoly()
        for c in reversed(self.coeffs):
            acc = acc * inner + UniPoly([c])
        return acc

    def __add__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return UniPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return UniPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UniPoly()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    out[i + j] += ca * cb
        return UniPoly(out)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        s = _q(scalar)
        if s == 0:
            raise ZeroDivisionError("polynomial divided by zero")
        return UniPoly(c / s for c in self.coeffs)

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative polynomial power")
        result, base = UniPoly([1]), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Rational)):
            return self.coeffs == UniPoly([other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"UniPoly([{', '.join(str(c) for c in self.coeffs)}])"

    def __str__(self):
        if not self.coeffs:
            return "0"
        out = ""
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if mono and mag == 1:
                body = mono
            else:
                body = str(mag) if mag.denominator == 1 else f"({mag})"
                if mono:
                    body += "*" + mono
            out += (f" {sign} " if out else ("-" if sign == "-" else "")) + body
        return out

    def to_strings(self):
        """Coefficients as exact rational strings, ascending degree."""
        return [str(c) for c in self.coeffs]


def _lift(value):
    if isinstance(value, UniPoly):
        return value
    if isinstance(value, (int, Rational)):
        return UniPoly([value])
    return NotImplemented
