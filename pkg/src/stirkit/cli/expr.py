"""A small, total expression language over exact rationals.

Grammar (lowest precedence first)::

    expr    := term (("+" | "-") term)*
    term    := unary (("*" | "/") unary)*
    unary   := "-" unary | power
    power   := atom ("^" unary)?
    atom    := NUMBER | NAME | NAME "(" args ")" | "(" expr ")" | "[" pred "]"
             | ("sum" | "prod") "(" NAME "," expr "," expr ["," expr "," expr] ")"
    pred    := conj ("or" conj)*
    conj    := neg ("and" neg)*
    neg     := "not" neg | "true" | "false" | "(" pred ")"
             | expr (CMP expr)+ | expr "in" "{" expr ("," expr)* "}"
             | expr ("prime" | "even" | "odd") | expr "divides" expr

``sum(k, guard, body)`` adds ``guard*body`` over the integers; the range of
``k`` comes from the bracket factors of ``guard`` unless the five-argument
form ``sum(k, guard, body, lo, hi)`` declares it.  In a product of factors
the brackets are evaluated first and a zero bracket stops the product, so
``[k != 0]/k`` is 0 at ``k = 0``.  ``1 - [P]`` is read as ``[not P]``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Mapping, Optional, Tuple

from stirkit import iverson
from stirkit.analysis import FALLING, RISING, factorial_power_real, falling, rising
from stirkit.config import check_cap
from stirkit.errors import CapExceeded, DomainError, ParseError, PoleError, UnboundVariable
from stirkit.numbers import binomial, factorial, stirling_cycle, stirling_subset

MAX_SOURCE = 64 * 1024
MAX_POWER_BITS = 10**6

# -- tokens --------------------------------------------------------------------

_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<num>\d+(?:\.\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op><=|>=|!=|==|[-+*/^()\[\]{},<>=])
    """,
    re.VERBOSE,
)

KEYWORDS = {"and", "or", "not", "in", "prime", "even", "odd", "divides", "true", "false", "sum", "prod"}


@dataclass(frozen=True)
class Token:
    kind: str  # "num", "name", "op", "kw", "eof"
    text: str
    line: int
    column: int


def tokenize(text: str):
    if len(text.encode("utf-8")) > MAX_SOURCE:
        raise ParseError("expression longer than 64 KiB", 1, 1)
    out = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        col = pos - line_start + 1
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        if kind == "nl":
            line, line_start = line + 1, m.end()
        elif kind != "ws":
            word = m.group()
            if kind == "name" and word in KEYWORDS:
                kind = "kw"
            if word == "==":
                word = "="
            out.append(Token(kind, word, line, col))
        pos = m.end()
    out.append(Token("eof", "", line, pos - line_start + 1))
    return out


# -- syntax tree ---------------------------------------------------------------


class Node:
    """Expression node; callable on an environment so it can serve as a bracket term."""

    prec = 9

    def __call__(self, env):
        return evaluate(self, env)

    def free_vars(self):
        raise NotImplementedError


@dataclass(frozen=True)
class Num(Node):
    value: Fraction

    def free_vars(self):
        return frozenset()


@dataclass(frozen=True)
class Var(Node):
    name: str

    def free_vars(self):
        return frozenset([self.name])


@dataclass(frozen=True)
class Neg(Node):
    operand: Node
    prec = 3

    def free_vars(self):
        return self.operand.free_vars()


@dataclass(frozen=True)
class Add(Node):
    """left-to-right chain; ``ops[i]`` is "+" or "-" applied to ``parts[i+1]``."""

    parts: Tuple[Node, ...]
    ops: Tuple[str, ...]
    prec = 1

    def free_vars(self):
        return frozenset().union(*(p.free_vars() for p in self.parts))


@dataclass(frozen=True)
class Mul(Node):
    parts: Tuple[Node, ...]
    ops: Tuple[str, ...]  # "*" or "/" applied to parts[i+1]
    prec = 2

    def free_vars(self):
        return frozenset().union(*(p.free_vars() for p in self.parts))


@dataclass(frozen=True)
class Pow(Node):
    base: Node
    exponent: Node
    prec = 4

    def free_vars(self):
        return self.base.free_vars() | self.exponent.free_vars()


@dataclass(frozen=True)
class Call(Node):
    name: str
    args: Tuple[Node, ...]

    def free_vars(self):
        return frozenset().union(*(a.free_vars() for a in self.args))


@dataclass(frozen=True)
class Bracket(Node):
    pred: "PNode"

    def free_vars(self):
        return self.pred.free_vars()


@dataclass(frozen=True)
class Big(Node):
    """``sum``/``prod`` over one integer variable."""

    op: str
    var: str
    guard: Node
    body: Node
    lo: Optional[Node] = None
    hi: Optional[Node] = None

    def free_vars(self):
        inner = self.guard.free_vars() | self.body.free_vars()
        outer = frozenset().union(*(b.free_vars() for b in (self.lo, self.hi) if b is not None))
        return (inner - {self.var}) | outer


class PNode:
    prec = 9

    def free_vars(self):
        raise NotImplementedError


@dataclass(frozen=True)
class PBool(PNode):
    value: bool

    def free_vars(self):
        return frozenset()


@dataclass(frozen=True)
class PChain(PNode):
    """``a op b op c ...``, meaning the conjunction of adjacent comparisons."""

    operands: Tuple[Node, ...]
    ops: Tuple[str, ...]

    def free_vars(self):
        return frozenset().union(*(o.free_vars() for o in self.operands))


@dataclass(frozen=True)
class PIn(PNode):
    operand: Node
    members: Tuple[Node, ...]

    def free_vars(self):
        return frozenset().union(self.operand.free_vars(), *(m.free_vars() for m in self.members))


@dataclass(frozen=True)
class PPost(PNode):
    operand: Node
    kind: str  # prime, even, odd

    def free_vars(self):
        return self.operand.free_vars()


@dataclass(frozen=True)
class PDivides(PNode):
    divisor: Node
    dividend: Node

    def free_vars(self):
        return self.divisor.free_vars() | self.dividend.free_vars()


@dataclass(frozen=True)
class PNot(PNode):
    inner: PNode
    prec = 3

    def free_vars(self):
        return self.inner.free_vars()


@dataclass(frozen=True)
class PAnd(PNode):
    parts: Tuple[PNode, ...]
    prec = 2

    def free_vars(self):
        return frozenset().union(*(p.free_vars() for p in self.parts))


@dataclass(frozen=True)
class POr(PNode):
    parts: Tuple[PNode, ...]
    prec = 1

    def free_vars(self):
        return frozenset().union(*(p.free_vars() for p in self.parts))


# -- functions -----------------------------------------------------------------


def _as_int(v, fn):
    if isinstance(v, Fraction) and v.denominator == 1:
        return v.numerator
    if isinstance(v, int):
        return v
    raise DomainError(f"{fn} needs integer arguments, got {_show(v)}")


def _table_args(fn, n, k):
    n, k = _as_int(n, fn), _as_int(k, fn)
    check_cap("TABLE_CAP", (abs(n) + 1) * (abs(k) + 1), f"{fn} argument")
    return n, k


def _fn_factorial(n):
    n = _as_int(n, "factorial")
    check_cap("TABLE_CAP", abs(n), "factorial argument")
    return factorial(n)


def _fn_binomial(n, k):
    if isinstance(n, Fraction) and n.denominator != 1:
        # general upper index: n(n-1)...(n-k+1)/k!
        k = _as_int(k, "binomial")
        check_cap("TABLE_CAP", abs(k), "binomial argument")
        return Fraction(0) if k < 0 else falling(n, k) / factorial(k)
    return binomial(*_table_args("binomial", n, k))


def _factorial_power(kind):
    exact = falling if kind == FALLING else rising

    def fn(z, a):
        if isinstance(a, float) or (isinstance(a, Fraction) and a.denominator != 1):
            return factorial_power_real(float(z), float(a), kind)
        a = _as_int(a, kind)
        check_cap("TABLE_CAP", abs(a), f"{kind} exponent")
        return exact(z, a)

    return fn


def _fn_floorlg(x):
    if x <= 0:
        raise DomainError(f"floorlg needs a positive argument, got {_show(x)}")
    return Fraction(math.floor(x)).numerator.bit_length() - 1


def _fn_mod(a, b):
    if b == 0:
        raise PoleError("mod by zero")
    return a - b * math.floor(a / b)


def _fn_sqrt(x):
    if x < 0:
        raise DomainError("sqrt of a negative number")
    if isinstance(x, Fraction):
        rn, rd = math.isqrt(x.numerator), math.isqrt(x.denominator)
        if rn * rn == x.numerator and rd * rd == x.denominator:
            return Fraction(rn, rd)
    return math.sqrt(x)


FUNCTIONS = {
    "binomial": (2, _fn_binomial),
    "cycle": (2, lambda n, k: stirling_cycle(*_table_args("cycle", n, k))),
    "subset": (2, lambda n, k: stirling_subset(*_table_args("subset", n, k))),
    "falling": (2, _factorial_power(FALLING)),
    "rising": (2, _factorial_power(RISING)),
    "factorial": (1, _fn_factorial),
    "floor": (1, math.floor),
    "ceil": (1, math.ceil),
    "mod": (2, _fn_mod),
    "abs": (1, abs),
    "floorlg": (1, _fn_floorlg),
    "sqrt": (1, _fn_sqrt),
}

_CMP = ("<", "<=", "=", "!=", ">=", ">")

# -- parser --------------------------------------------------------------------

_EXPR_START = ("NUMBER", "NAME", "(", "-", "[", "sum", "prod")


class _Parser:
    def __init__(self, text):
        self.toks = tokenize(text)
        self.i = 0

    @property
    def tok(self):
        return self.toks[self.i]

    def advance(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def at(self, *texts):
        t = self.tok
        return t.kind in ("op", "kw") and t.text in texts

    def fail(self, expected, message=None):
        t = self.tok
        if message is None:
            message = "unexpected end of input" if t.kind == "eof" else f"unexpected {t.text!r}"
        raise ParseError(message, t.line, t.column, expected)

    def expect(self, text):
        if not self.at(text):
            self.fail([text])
        return self.advance()

    def name(self):
        if self.tok.kind != "name":
            self.fail(["NAME"])
        return self.advance().text

    # expressions

    def expr(self):
        parts, ops = [self.term()], []
        while self.at("+", "-"):
            ops.append(self.advance().text)
            parts.append(self.term())
        return _complement(parts, ops)

    def term(self):
        parts, ops = [self.unary()], []
        while self.at("*", "/"):
            ops.append(self.advance().text)
            parts.append(self.unary())
        return parts[0] if not ops else Mul(tuple(parts), tuple(ops))

    def unary(self):
        if self.at("-"):
            self.advance()
            return Neg(self.unary())
        return self.power()

    def power(self):
        base = self.atom()
        if self.at("^"):
            self.advance()
            return Pow(base, self.unary())
        return base

    def atom(self):
        t = self.tok
        if t.kind == "num":
            self.advance()
            return Num(Fraction(t.text))
        if t.kind == "kw" and t.text in ("sum", "prod"):
            return self.big()
        if t.kind == "name":
            self.advance()
            if not self.at("("):
                return Var(t.text)
            if t.text not in FUNCTIONS:
                raise ParseError(f"unknown function {t.text!r}", t.line, t.column, FUNCTIONS)
            self.advance()
            args = [self.expr()]
            while self.at(","):
                self.advance()
                args.append(self.expr())
            if not self.at(")"):
                self.fail([",", ")"])
            self.advance()
            arity = FUNCTIONS[t.text][0]
            if len(args) != arity:
                raise ParseError(f"{t.text} takes {arity} argument(s), got {len(args)}", t.line, t.column)
            return Call(t.text, tuple(args))
        if self.at("("):
            self.advance()
            e = self.expr()
            self.expect(")")
            return e
        if self.at("["):
            self.advance()
            p = self.pred()
            self.expect("]")
            return Bracket(p)
        self.fail(_EXPR_START)

    def big(self):
        op = self.advance().text
        self.expect("(")
        var = self.name()
        self.expect(",")
        guard = self.expr()
        self.expect(",")
        body = self.expr()
        lo = hi = None
        if self.at(","):
            self.advance()
            lo = self.expr()
            self.expect(",")
            hi = self.expr()
        if not self.at(")"):
            self.fail([")"] if lo is not None else [")", ","])
        self.advance()
        return Big(op, var, guard, body, lo, hi)

    # predicates

    def pred(self):
        parts = [self.conj()]
        while self.at("or"):
            self.advance()
            parts.append(self.conj())
        return parts[0] if len(parts) == 1 else POr(tuple(parts))

    def conj(self):
        parts = [self.neg()]
        while self.at("and"):
            self.advance()
            parts.append(self.neg())
        return parts[0] if len(parts) == 1 else PAnd(tuple(parts))

    def neg(self):
        if self.at("not"):
            self.advance()
            return PNot(self.neg())
        if self.at("true", "false"):
            return PBool(self.advance().text == "true")
        if self.at("("):
            # a parenthesized predicate, or an expression that starts with "("
            save = self.i
            try:
                self.advance()
                p = self.pred()
                self.expect(")")
                if not self.at(*_CMP, "in", "prime", "even", "odd", "divides", "+", "-", "*", "/", "^"):
                    return p
            except ParseError:
                pass
            self.i = save
        left = self.expr()
        if self.at(*_CMP):
            operands, ops = [left], []
            while self.at(*_CMP):
                ops.append(self.advance().text)
                operands.append(self.expr())
            return PChain(tuple(operands), tuple(ops))
        if self.at("in"):
            self.advance()
            self.expect("{")
            members = []
            if not self.at("}"):
                members.append(self.expr())
                while self.at(","):
                    self.advance()
                    members.append(self.expr())
            self.expect("}")
            return PIn(left, tuple(members))
        if self.at("prime", "even", "odd"):
            return PPost(left, self.advance().text)
        if self.at("divides"):
            self.advance()
            return PDivides(left, self.expr())
        self.fail(list(_CMP) + ["in", "prime", "even", "odd", "divides"])


def _complement(parts, ops):
    # 1 - [P] becomes [not P]
    if len(parts) == 2 and ops == ["-"] and parts[0] == Num(Fraction(1)) and isinstance(parts[1], Bracket):
        inner = parts[1].pred
        return Bracket(inner.inner if isinstance(inner, PNot) else PNot(inner))
    return parts[0] if not ops else Add(tuple(parts), tuple(ops))


def parse(text: str) -> Node:
    """Parse an expression; raises :class:`ParseError` with line, column and expected tokens."""
    p = _Parser(text)
    e = p.expr()
    if p.tok.kind != "eof":
        p.fail(["+", "-", "*", "/", "^", "end of input"])
    return e


# -- printer -------------------------------------------------------------------


def _show(v) -> str:
    if isinstance(v, float):
        return "%.17g" % v
    if isinstance(v, Fraction) and v.denominator == 1:
        return str(v.numerator)
    return str(v)


def _decimal(v: Fraction) -> Optional[str]:
    """Terminating decimal spelling of a nonnegative ``v``, or None."""
    d, places = v.denominator, 0
    while d % 10 == 0 or d % 2 == 0 or d % 5 == 0:
        if d % 10 == 0:
            d //= 10
        elif d % 2 == 0:
            d //= 2
        else:
            d //= 5
        places += 1
    if d != 1 or v < 0:
        return None
    scaled = v * 10**places
    while places and scaled.numerator % 10 == 0:
        scaled /= 10
        places -= 1
    digits = str(scaled.numerator).rjust(places + 1, "0")
    return digits[:-places] + "." + digits[-places:]


def _wrap(node, min_prec):
    s = to_text(node)
    return f"({s})" if node.prec < min_prec else s


def to_text(node) -> str:
    """Canonical text; ``parse(to_text(e)) == e`` for every parsed ``e``."""
    if isinstance(node, Num):
        v = node.value
        if v.denominator == 1:
            return str(v.numerator)
        return _decimal(v) or f"({v.numerator}/{v.denominator})"
    if isinstance(node, Var):
        return node.name
    if isinstance(node, Neg):
        return "-" + _wrap(node.operand, 3)
    if isinstance(node, (Add, Mul)):
        # a leading chain of the same kind must keep its parentheses
        first = node.parts[0]
        out = _wrap(first, node.prec + (type(first) is type(node)))
        for op, part in zip(node.ops, node.parts[1:]):
            out += f" {op} " + _wrap(part, node.prec + 1)
        return out
    if isinstance(node, Pow):
        return _wrap(node.base, 5) + "^" + _wrap(node.exponent, 3)
    if isinstance(node, Call):
        return f"{node.name}(" + ", ".join(to_text(a) for a in node.args) + ")"
    if isinstance(node, Bracket):
        return "[" + to_text(node.pred) + "]"
    if isinstance(node, Big):
        args = [node.var, to_text(node.guard), to_text(node.body)]
        if node.lo is not None:
            args += [to_text(node.lo), to_text(node.hi)]
        return f"{node.op}(" + ", ".join(args) + ")"
    if isinstance(node, PBool):
        return "true" if node.value else "false"
    if isinstance(node, PChain):
        out = to_text(node.operands[0])
        for op, o in zip(node.ops, node.operands[1:]):
            out += f" {op} " + to_text(o)
        return out
    if isinstance(node, PIn):
        return to_text(node.operand) + " in {" + ", ".join(to_text(m) for m in node.members) + "}"
    if isinstance(node, PPost):
        return _wrap(node.operand, 9) + " " + node.kind
    if isinstance(node, PDivides):
        return f"{to_text(node.divisor)} divides {to_text(node.dividend)}"
    if isinstance(node, PNot):
        return "not " + _wrap(node.inner, 3)
    if isinstance(node, PAnd):
        return " and ".join(_wrap(p, 3) for p in node.parts)
    if isinstance(node, POr):
        return " or ".join(_wrap(p, 2) for p in node.parts)
    raise TypeError(f"not an expression node: {node!r}")


# -- evaluation ----------------------------------------------------------------


def _term(node):
    # the iverson module treats str operands as variable names
    if isinstance(node, Var):
        return node.name
    if isinstance(node, Num):
        return node.value
    return node


def to_predicate(p: PNode) -> iverson.Predicate:
    if isinstance(p, PBool):
        return iverson.TRUE if p.value else iverson.FALSE
    if isinstance(p, PChain):
        links = [
            iverson.Compare(op, _term(a), _term(b))
            for op, a, b in zip(p.ops, p.operands, p.operands[1:])
        ]
        return links[0] if len(links) == 1 else iverson.And(tuple(links))
    if isinstance(p, PIn):
        if all(isinstance(m, Num) for m in p.members):
            return iverson.InSet(_term(p.operand), [m.value for m in p.members])
        # members are evaluated lazily so they may mention outer variables
        return _LazyIn(_term(p.operand), p.members)
    if isinstance(p, PPost):
        cls = {"prime": iverson.Prime, "even": iverson.Even, "odd": iverson.Odd}[p.kind]
        return cls(_term(p.operand))
    if isinstance(p, PDivides):
        return iverson.Divides(_term(p.divisor), _term(p.dividend))
    if isinstance(p, PNot):
        return iverson.Not(to_predicate(p.inner))
    if isinstance(p, PAnd):
        return iverson.And(tuple(to_predicate(q) for q in p.parts))
    if isinstance(p, POr):
        return iverson.Or(tuple(to_predicate(q) for q in p.parts))
    raise TypeError(f"not a predicate node: {p!r}")


@dataclass(frozen=True)
class _LazyIn(iverson.Predicate):
    x: object
    members: Tuple[Node, ...]

    def holds(self, env):
        v = iverson._value(self.x, env)
        return any(v == evaluate(m, env) for m in self.members)

    def free_vars(self):
        return iverson._union(iverson._term_vars(self.x), *(m.free_vars() for m in self.members))


def _bracket_guard(guard: Node) -> iverson.Predicate:
    """Conjunction of the bracket factors of a guard (used only to derive the range)."""
    factors = [guard]
    if isinstance(guard, Mul):
        factors = [f for f, op in zip(guard.parts, ("*",) + guard.ops) if op == "*"]
    preds = [to_predicate(f.pred) for f in factors if isinstance(f, Bracket)]
    if not preds:
        return iverson.TRUE
    return preds[0] if len(preds) == 1 else iverson.And(tuple(preds))


def _lift(v):
    return Fraction(v) if isinstance(v, int) else v


def _power(base, exp):
    if isinstance(exp, Fraction) and exp.denominator == 1 and not isinstance(base, float):
        e = exp.numerator
        if base == 0 and e < 0:
            raise PoleError("zero raised to a negative power")
        if base not in (0, 1, -1):
            bits = abs(e) * max(abs(base.numerator), base.denominator).bit_length()
            if bits > MAX_POWER_BITS:
                raise CapExceeded(f"power with about {bits} bits exceeds {MAX_POWER_BITS}")
        return base**e  # 0^0 = 1
    b, e = float(base), float(exp)
    if b < 0 and not e.is_integer():
        raise DomainError("negative base with a non-integer exponent")
    if b == 0 and e < 0:
        raise PoleError("zero raised to a negative power")
    return b**e


def _mul_chain(node: Mul, env):
    # brackets in numerator position first: a zero bracket is a strong zero
    numer = [p for p, op in zip(node.parts, ("*",) + node.ops) if op == "*"]
    for p in numer:
        if isinstance(p, Bracket) and not to_predicate(p.pred).holds(env):
            return Fraction(0)
    acc = Fraction(1)
    for p, op in zip(node.parts, ("*",) + node.ops):
        v = evaluate(p, env)
        if op == "*":
            acc = acc * v
        else:
            if v == 0:
                raise PoleError(f"division by zero in {to_text(p)}")
            acc = acc / v
    return acc


def _big(node: Big, env):
    guard = _bracket_guard(node.guard)
    support = None
    if node.lo is not None:
        support = ((_as_int(evaluate(node.lo, env), "sum range"), _as_int(evaluate(node.hi, env), "sum range")),)
    product = Mul((node.guard, node.body), ("*",))

    def term(local):
        return evaluate(product, local)

    def factor(local):
        if not _guard_bit(node.guard, local):
            return Fraction(1)
        return evaluate(node.body, local)

    outer = {k: v for k, v in env.items() if k != node.var}
    if node.op == "sum":
        spec = iverson.SumSpec((node.var,), guard, term, support)
        return iverson.sum_brackets(spec, outer)
    spec = iverson.SumSpec((node.var,), guard, factor, support)
    return iverson.prod_brackets(spec, outer)


def _guard_bit(guard, env):
    # in a product the guard is an exponent, so it must be 0 or 1
    g = evaluate(guard, env)
    if g not in (0, 1):
        raise DomainError(f"prod guard must evaluate to 0 or 1, got {_show(g)}")
    return g == 1


def evaluate(node, env: Mapping[str, object]):
    """Exact value (Fraction) of ``node``; a float only when a real-valued function is involved."""
    if isinstance(node, Num):
        return node.value
    if isinstance(node, Var):
        try:
            return _lift(env[node.name])
        except KeyError:
            raise UnboundVariable(node.name) from None
    if isinstance(node, Neg):
        return -evaluate(node.operand, env)
    if isinstance(node, Add):
        acc = evaluate(node.parts[0], env)
        for op, p in zip(node.ops, node.parts[1:]):
            v = evaluate(p, env)
            acc = acc + v if op == "+" else acc - v
        return acc
    if isinstance(node, Mul):
        return _mul_chain(node, env)
    if isinstance(node, Pow):
        return _power(evaluate(node.base, env), evaluate(node.exponent, env))
    if isinstance(node, Call):
        fn = FUNCTIONS[node.name][1]
        return _lift(fn(*(evaluate(a, env) for a in node.args)))
    if isinstance(node, Bracket):
        return Fraction(1 if to_predicate(node.pred).holds(env) else 0)
    if isinstance(node, Big):
        return _lift(_big(node, env))
    raise TypeError(f"cannot evaluate {node!r}")


def eval_expr(e, bindings: Optional[Mapping[str, object]] = None):
    """Evaluate parsed or textual ``e`` under ``bindings``."""
    node = parse(e) if isinstance(e, str) else e
    env: Dict[str, object] = {k: _lift(Fraction(v) if isinstance(v, str) else v) for k, v in (bindings or {}).items()}
    return evaluate(node, env)


def format_value(v) -> str:
    return _show(v)
