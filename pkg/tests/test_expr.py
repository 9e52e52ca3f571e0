from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stirkit import CapExceeded, ParseError, PoleError, SupportError, UnboundVariable
from stirkit.cli.expr import Big, Bracket, Call, PNot, eval_expr, format_value, parse, to_text


@pytest.mark.parametrize(
    "text, bindings, expected",
    [
        ("subset(4,2)", {}, 7),
        ("cycle(4,2)", {}, 11),
        ("cycle(-2,-4)", {}, 7),
        ("binomial(-1, 3)", {}, -1),
        ("sum(k, [0<=k]*[k<=n], k*(k-1)*(n-k))", {"n": 5}, 30),
        ("sum(k, [1<=k]*[k<=0], 1/k)", {}, 0),
        ("sum(p, [p prime]*[p<=10], 1/p)", {}, Fraction(247, 210)),
        ("prod(p, [p prime and p divides 12], p)", {}, 6),
        ("sum(k, [1 <= k <= 2^(n+1) - 1], binomial(n, floorlg(k)))", {"n": 3}, 27),
        ("sum(k, [k in {1, 2, 3}], k^2)", {}, 14),
        ("sum(k, [0 <= k <= n], [k != 0]/k)", {"n": 3}, Fraction(11, 6)),
        ("sum(j, [1 <= j <= 4], sum(k, [1 <= k <= j], j*k))", {}, 65),
        ("0^0", {}, 1),
        ("2.5 * 4", {}, 10),
        ("-3^2", {}, -9),
        ("(-3)^2", {}, 9),
        ("2^-2", {}, Fraction(1, 4)),
        ("mod(-7, 3) + abs(-2) + floor(7/2) + ceil(7/2)", {}, 2 + 2 + 3 + 4),
        ("falling(5, 3) + rising(2, 3) + factorial(4)", {}, 60 + 24 + 24),
        ("falling(1, -2)", {}, Fraction(1, 6)),
        ("1 - [n even]", {"n": 3}, 1),
        ("[1 < n < 4 and not n = 2]", {"n": 3}, 1),
        ("[n = 1 or n = 2 or n = 3]", {"n": 2}, 1),
        ("[true] + [false]", {}, 1),
        ("[(n + 1) prime]", {"n": 4}, 1),
        ("sqrt(9/4)", {}, Fraction(3, 2)),
        ("sum(k, 1, [k >= 0] * binomial(3, k), -1, 4)", {}, 8),
    ],
)
def test_eval(text, bindings, expected):
    assert eval_expr(text, bindings) == expected


def test_real_valued_functions():
    v = eval_expr("falling(10, 0.5)")
    assert isinstance(v, float) and abs(v - 3.2020375888) < 1e-9
    assert isinstance(eval_expr("sqrt(2)"), float)
    assert format_value(eval_expr("sqrt(2)")) == "1.4142135623730951"
    assert format_value(Fraction(3, 4)) == "3/4"


def test_structure():
    assert isinstance(parse("cycle(4,2)"), Call)
    s = parse("sum(k, [0<=k]*[k<=n], k*(k-1)*(n-k))")
    assert isinstance(s, Big) and s.op == "sum" and len(s.guard.parts) == 2
    c = parse("1 - [k < 2]")
    assert isinstance(c, Bracket) and isinstance(c.pred, PNot)
    assert parse("1 - [not k < 2]") == parse("[k < 2]")


def test_parse_errors():
    with pytest.raises(ParseError) as e:
        parse("sum(k,")
    assert (e.value.line, e.value.column) == (1, 7)
    assert "NUMBER" in e.value.expected
    with pytest.raises(ParseError) as e:
        parse("1 +\n  * 2")
    assert (e.value.line, e.value.column) == (2, 3)
    for bad in ("cycle(4", "foo(1)", "cycle(1)", "[k <]", "1 2", "sum(1, 2, 3)", "@", "[k in {1,]", "x prime"):
        with pytest.raises(ParseError):
            parse(bad)
    with pytest.raises(ParseError):
        parse("1+" * 40000)


def test_evaluation_errors():
    with pytest.raises(UnboundVariable):
        eval_expr("n + 1")
    with pytest.raises(PoleError):
        eval_expr("1/[n = 3]", {"n": 4})
    with pytest.raises(PoleError):
        eval_expr("[n = 4] * (1/0)", {"n": 4})
    with pytest.raises(SupportError):
        eval_expr("sum(k, [k >= 0], 1)")
    with pytest.raises(SupportError):
        eval_expr("sum(j, 1, j, 0, 3)")
    with pytest.raises(CapExceeded):
        eval_expr("10^10^10")


def test_strong_zero_short_circuits_poles():
    assert eval_expr("[n != 0] * (1/n)", {"n": 0}) == 0
    assert eval_expr("sum(k, [-3 <= k <= 3], [k != 0] / k)") == 0


CANONICAL = [
    "sum(k, [0 <= k] * [k <= n], k * (k - 1) * (n - k))",
    "a / (b * c) - (d - e)",
    "-x^2 - -3",
    "2^3^2",
    "-((x + x) + x)",
    "(a * b) * c / d",
    "(2^3)^2",
    "[(n < 3 or n > 4) and not n odd]",
    "[not (a = 1 and b = 2)]",
    "[k in {1, 2, n + 1}]",
    "prod(p, [p prime and p divides n], p)",
    "sum(j, 1, j, 0, n)",
    "2.5 * x",
    "[(n + 1) prime]",
    "[a divides b - 1]",
]


@pytest.mark.parametrize("text", CANONICAL)
def test_canonical_round_trip(text):
    assert to_text(parse(text)) == text
    assert parse(to_text(parse(text))) == parse(text)


leaf = st.sampled_from(["x", "n", "3", "0.25", "cycle(n, 2)", "[x < n]"])


def _combine(children):
    return st.one_of(
        st.tuples(children, st.sampled_from(["+", "-", "*", "/", "^"]), children).map(lambda t: f"({t[0]} {t[1]} {t[2]})"),
        children.map(lambda c: f"-{c}"),
        st.tuples(children, children).map(lambda t: f"[{t[0]} <= {t[1]} or not {t[0]} = 1]"),
    )


@given(st.recursive(leaf, _combine, max_leaves=8))
@settings(max_examples=150, deadline=None)
def test_round_trip_property(text):
    tree = parse(text)
    assert parse(to_text(tree)) == tree
