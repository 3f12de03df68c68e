"""Expression parser and exact differentiation.

The derivative oracle is a 5-point central difference evaluated on the
parsed AST itself, so the two sides share nothing but the source text.
"""

import math
import random

import pytest

from mannheim import expr as ex
from mannheim.errors import ExprSyntaxError

# functions that are safe on all of (0.2, 2.2), used for the random ASTs
_SAFE_FNS = ("sin", "cos", "sinh", "cosh", "tanh", "exp", "atan", "asinh")


def test_parse_number_forms():
    for src, val in [("2", 2.0), ("2.5", 2.5), (".5", 0.5), ("1e-3", 1e-3),
                     ("2.5E2", 250.0), ("pi", math.pi), ("e", math.e)]:
        node = ex.parse_expr(src)
        assert isinstance(node, ex.Number)
        assert node.value == val


def test_parse_precedence():
    f = lambda src, s: ex.evaluate(ex.parse_expr(src), s)
    assert f("1 + 2*3", 0.0) == 7.0
    assert f("2*3 ^ 2", 0.0) == 18.0           # ^ binds tighter than *
    assert f("2 ^ 3 ^ 2", 0.0) == 512.0        # right associative
    assert f("-2 ^ 2", 0.0) == 4.0             # unary minus binds tighter than ^
    assert f("(1 + 2)*3", 0.0) == 9.0
    assert f("6/3/2", 0.0) == 1.0              # left associative
    assert f("s - -s", 3.0) == 6.0


def test_parse_errors_carry_offset():
    with pytest.raises(ExprSyntaxError) as ei:
        ex.parse_expr("1 + * 2")
    assert ei.value.offset == 4
    with pytest.raises(ExprSyntaxError):
        ex.parse_expr("sin(")
    with pytest.raises(ExprSyntaxError):
        ex.parse_expr("bogus(1)")
    with pytest.raises(ExprSyntaxError):
        ex.parse_expr("1 2")
    with pytest.raises(ExprSyntaxError):
        ex.parse_expr("")


def test_parse_curve():
    c = ex.parse_curve("(s, s^2, sin(s))")
    assert len(c) == 3
    assert ex.evaluate(c[1], 3.0) == 9.0
    with pytest.raises(ExprSyntaxError) as ei:
        ex.parse_curve("(1,2")
    assert ei.value.offset == 4
    with pytest.raises(ExprSyntaxError):
        ex.parse_curve("(1, 2)")


def test_known_derivatives():
    cases = [
        ("s^3", lambda s: 3 * s * s),
        ("1/s", lambda s: -1 / s ** 2),
        ("sqrt(s)", lambda s: 0.5 / math.sqrt(s)),
        ("ln(s)", lambda s: 1 / s),
        ("tan(s)", lambda s: 1 / math.cos(s) ** 2),
        ("atanh(s/3)", lambda s: (1 / 3) / (1 - (s / 3) ** 2)),
        ("acosh(s + 2)", lambda s: 1 / math.sqrt((s + 2) ** 2 - 1)),
        ("exp(0 - s^2)", lambda s: -2 * s * math.exp(-s * s)),
        ("s*sin(s)", lambda s: math.sin(s) + s * math.cos(s)),
    ]
    for src, want in cases:
        d = ex.differentiate(ex.parse_expr(src))
        for s in (0.3, 0.9, 1.4):
            assert ex.evaluate(d, s) == pytest.approx(want(s), rel=1e-12)


def test_differentiate_constants():
    assert ex.differentiate(ex.parse_expr("pi * 4")) == ex.ZERO
    assert ex.differentiate(ex.parse_expr("s")) == ex.ONE


def _random_ast(rng: random.Random, depth: int) -> ex.Expr:
    if depth == 0:
        return ex.S if rng.random() < 0.6 else ex.Number(rng.uniform(0.3, 2.0))
    pick = rng.random()
    if pick < 0.22:
        return ex.add(_random_ast(rng, depth - 1), _random_ast(rng, depth - 1))
    if pick < 0.44:
        return ex.sub(_random_ast(rng, depth - 1), _random_ast(rng, depth - 1))
    if pick < 0.62:
        return ex.mul(_random_ast(rng, depth - 1), _random_ast(rng, depth - 1))
    if pick < 0.72:
        # keep denominators away from zero on the sample window
        den = ex.add(ex.call("cosh", _random_ast(rng, depth - 1)),
                     ex.Number(rng.uniform(0.5, 1.5)))
        return ex.div(_random_ast(rng, depth - 1), den)
    if pick < 0.82:
        return ex.pow_(_random_ast(rng, depth - 1), ex.Number(float(rng.randint(2, 3))))
    return ex.call(rng.choice(_SAFE_FNS), _random_ast(rng, depth - 1))


def _fd5(f, s: float, h: float) -> float:
    return (f(s - 2 * h) - 8 * f(s - h) + 8 * f(s + h) - f(s + 2 * h)) / (12 * h)


def test_random_asts_against_finite_differences():
    rng = random.Random(20240814)
    checked = 0
    while checked < 1000:
        node = _random_ast(rng, rng.randint(1, 4))
        d = ex.differentiate(node)
        s = rng.uniform(0.2, 2.2)
        try:
            val = ex.evaluate(node, s)
            sym = ex.evaluate(d, s)
        except (OverflowError, ValueError):
            continue
        if not (math.isfinite(val) and math.isfinite(sym)) or abs(val) > 1e6:
            continue
        fd = _fd5(lambda t: ex.evaluate(node, t), s, 1e-4)
        assert sym == pytest.approx(fd, rel=1e-6, abs=1e-6), ex.to_source(node)
        checked += 1


def test_round_trip_source():
    rng = random.Random(99)
    for _ in range(300):
        node = _random_ast(rng, rng.randint(1, 4))
        src = ex.to_source(node)
        again = ex.parse_expr(src)
        assert again == node, src
        assert ex.to_source(again) == src


def test_round_trip_preserves_value_of_parse():
    for src in ("1 + 2*s", "-s^2", "sin(cos(s))", "s/(1 + s^2)",
                "2 ^ s", "-(s + 1)", "s*-2", "sqrt(s + 4)"):
        node = ex.parse_expr(src)
        again = ex.parse_expr(ex.to_source(node))
        assert again == node
        for s in (0.25, 1.75):
            assert ex.evaluate(again, s) == ex.evaluate(node, s)


def test_smart_constructors_fold_constants():
    assert ex.add(ex.Number(1.0), ex.Number(2.0)) == ex.Number(3.0)
    assert ex.mul(ex.Number(0.0), ex.S) == ex.ZERO
    assert ex.mul(ex.Number(1.0), ex.S) == ex.S
    assert ex.pow_(ex.S, ex.Number(1.0)) == ex.S
    assert ex.call("sin", ex.Number(0.0)) == ex.ZERO
