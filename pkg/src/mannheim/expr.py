"""Expression language for curve components.

Grammar (whitespace insensitive):

    expr   := term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := unary ('^' factor)?
    unary  := '-' unary | atom
    atom   := number | 's' | 'pi' | 'e' | fn '(' expr ')' | '(' expr ')'

'^' is right associative and its base is a unary, so "-s^2" parses as
(-s)^2 while "2^-3" is accepted. ASTs are immutable named tuples;
differentiation returns new trees with constant folding applied on the way
up, which keeps repeated derivatives (up to fourth order) tractable.
"""

from __future__ import annotations

import math
import re
from typing import NamedTuple, Union

from .errors import ExprSyntaxError

FUNCTIONS = (
    "sin", "cos", "tan", "sinh", "cosh", "tanh", "exp", "ln", "sqrt",
    "asin", "acos", "atan", "asinh", "acosh", "atanh",
)

_FN_EVAL = {
    "sin": math.sin, "cos": math.cos, "tan": math.tan,
    "sinh": math.sinh, "cosh": math.cosh, "tanh": math.tanh,
    "exp": math.exp, "ln": math.log, "sqrt": math.sqrt,
    "asin": math.asin, "acos": math.acos, "atan": math.atan,
    "asinh": math.asinh, "acosh": math.acosh, "atanh": math.atanh,
}

_CONSTANTS = {"pi": math.pi, "e": math.e}


class Number(NamedTuple):
    value: float


class Var(NamedTuple):
    pass


class Neg(NamedTuple):
    arg: "Expr"


class Add(NamedTuple):
    a: "Expr"
    b: "Expr"


class Sub(NamedTuple):
    a: "Expr"
    b: "Expr"


class Mul(NamedTuple):
    a: "Expr"
    b: "Expr"


class Div(NamedTuple):
    a: "Expr"
    b: "Expr"


class Pow(NamedTuple):
    a: "Expr"
    b: "Expr"


class Call(NamedTuple):
    fn: str
    arg: "Expr"


Expr = Union[Number, Var, Neg, Add, Sub, Mul, Div, Pow, Call]

ZERO = Number(0.0)
ONE = Number(1.0)
S = Var()


# ---------------------------------------------------------------------------
# tokenizer

_NUMBER_RE = re.compile(r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?")
_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")


class _Token(NamedTuple):
    kind: str   # "number", "ident", one of "+-*/^(),", or "end"
    text: str
    pos: int


def _tokenize(src: str) -> list[_Token]:
    tokens = []
    i = 0
    n = len(src)
    while i < n:
        ch = src[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit() or ch == ".":
            m = _NUMBER_RE.match(src, i)
            if not m:
                raise ExprSyntaxError("malformed number", i, expected=("number",))
            tokens.append(_Token("number", m.group(), i))
            i = m.end()
            continue
        if ch.isalpha() or ch == "_":
            m = _IDENT_RE.match(src, i)
            tokens.append(_Token("ident", m.group(), i))
            i = m.end()
            continue
        if ch in "+-*/^(),":
            tokens.append(_Token(ch, ch, i))
            i += 1
            continue
        raise ExprSyntaxError(f"unexpected character {ch!r}", i,
                              expected=("number", "identifier", "operator"))
    tokens.append(_Token("end", "", n))
    return tokens


class _Parser:
    def __init__(self, src: str):
        self.src = src
        self.tokens = _tokenize(src)
        self.i = 0

    @property
    def cur(self) -> _Token:
        return self.tokens[self.i]

    def advance(self) -> _Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind: str) -> _Token:
        if self.cur.kind != kind:
            self.fail((kind,))
        return self.advance()

    def fail(self, expected):
        tok = self.cur
        got = "end of input" if tok.kind == "end" else repr(tok.text)
        names = ", ".join(f"'{e}'" if len(e) == 1 else e for e in expected)
        raise ExprSyntaxError(f"expected {names}, got {got}", tok.pos, expected)

    # grammar rules ----------------------------------------------------

    def expr(self) -> Expr:
        node = self.term()
        while self.cur.kind in "+-":
            op = self.advance().kind
            rhs = self.term()
            node = add(node, rhs) if op == "+" else sub(node, rhs)
        return node

    def term(self) -> Expr:
        node = self.factor()
        while self.cur.kind in "*/":
            op = self.advance().kind
            rhs = self.factor()
            node = mul(node, rhs) if op == "*" else div(node, rhs)
        return node

    def factor(self) -> Expr:
        base = self.unary()
        if self.cur.kind == "^":
            self.advance()
            return pow_(base, self.factor())
        return base

    def unary(self) -> Expr:
        if self.cur.kind == "-":
            self.advance()
            return neg(self.unary())
        return self.atom()

    def atom(self) -> Expr:
        tok = self.cur
        if tok.kind == "number":
            self.advance()
            return Number(float(tok.text))
        if tok.kind == "ident":
            self.advance()
            if tok.text == "s":
                return S
            if tok.text in _CONSTANTS:
                return Number(_CONSTANTS[tok.text])
            if tok.text in _FN_EVAL:
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                return Call(tok.text, arg)
            raise ExprSyntaxError(f"unknown identifier {tok.text!r}", tok.pos,
                                  expected=("s", "pi", "e") + FUNCTIONS)
        if tok.kind == "(":
            self.advance()
            node = self.expr()
            self.expect(")")
            return node
        self.fail(("number", "s", "function", "(", "-"))


def parse_expr(src: str) -> Expr:
    p = _Parser(src)
    node = p.expr()
    if p.cur.kind != "end":
        p.fail(("end of input",))
    return node


def parse_curve(src: str) -> tuple[Expr, Expr, Expr]:
    """Parse "(e1, e2, e3)" into a component triple."""
    p = _Parser(src)
    p.expect("(")
    comps = [p.expr()]
    while len(comps) < 3:
        if p.cur.kind != ",":
            p.fail((",",))
        p.advance()
        comps.append(p.expr())
    if p.cur.kind != ")":
        p.fail((")",))
    p.advance()
    if p.cur.kind != "end":
        p.fail(("end of input",))
    return tuple(comps)


# ---------------------------------------------------------------------------
# smart constructors: identity elimination plus constant folding

def add(a: Expr, b: Expr) -> Expr:
    if isinstance(a, Number) and isinstance(b, Number):
        return Number(a.value + b.value)
    if a == ZERO:
        return b
    if b == ZERO:
        return a
    return Add(a, b)


def sub(a: Expr, b: Expr) -> Expr:
    if isinstance(a, Number) and isinstance(b, Number):
        return Number(a.value - b.value)
    if b == ZERO:
        return a
    if a == ZERO:
        return neg(b)
    return Sub(a, b)


def neg(a: Expr) -> Expr:
    if isinstance(a, Number):
        return Number(-a.value)
    if isinstance(a, Neg):
        return a.arg
    return Neg(a)


def mul(a: Expr, b: Expr) -> Expr:
    if isinstance(a, Number) and isinstance(b, Number):
        return Number(a.value * b.value)
    if isinstance(b, Number):
        a, b = b, a  # numeric coefficient goes left
    if isinstance(a, Number):
        if a.value == 0.0:
            return ZERO
        if a.value == 1.0:
            return b
        if a.value == -1.0:
            return neg(b)
        if isinstance(b, Mul) and isinstance(b.a, Number):
            return mul(Number(a.value * b.a.value), b.b)
    return Mul(a, b)


def div(a: Expr, b: Expr) -> Expr:
    if isinstance(a, Number) and isinstance(b, Number) and b.value != 0.0:
        return Number(a.value / b.value)
    if b == ONE:
        return a
    return Div(a, b)


def pow_(a: Expr, b: Expr) -> Expr:
    if isinstance(b, Number):
        if b.value == 1.0:
            return a
        if b.value == 0.0:
            return ONE
        if isinstance(a, Number):
            try:
                v = math.pow(a.value, b.value)
            except (ValueError, OverflowError):
                return Pow(a, b)
            if math.isfinite(v):
                return Number(v)
    return Pow(a, b)


def call(fn: str, arg: Expr) -> Expr:
    if isinstance(arg, Number):
        try:
            v = _FN_EVAL[fn](arg.value)
        except (ValueError, OverflowError):
            return Call(fn, arg)  # leave the domain error to evaluation time
        if math.isfinite(v):
            return Number(v)
    return Call(fn, arg)


# ---------------------------------------------------------------------------
# differentiation

def differentiate(e: Expr) -> Expr:
    if isinstance(e, Number):
        return ZERO
    if isinstance(e, Var):
        return ONE
    if isinstance(e, Neg):
        return neg(differentiate(e.arg))
    if isinstance(e, Add):
        return add(differentiate(e.a), differentiate(e.b))
    if isinstance(e, Sub):
        return sub(differentiate(e.a), differentiate(e.b))
    if isinstance(e, Mul):
        return add(mul(differentiate(e.a), e.b), mul(e.a, differentiate(e.b)))
    if isinstance(e, Div):
        num = sub(mul(differentiate(e.a), e.b), mul(e.a, differentiate(e.b)))
        return div(num, mul(e.b, e.b))
    if isinstance(e, Pow):
        u, v = e.a, e.b
        du = differentiate(u)
        if isinstance(v, Number):
            return mul(mul(v, pow_(u, Number(v.value - 1.0))), du)
        dv = differentiate(v)
        if isinstance(u, Number):
            if u.value <= 0.0:
                raise ValueError("cannot differentiate power with non-positive constant base "
                                 "and variable exponent")
            return mul(pow_(u, v), mul(Number(math.log(u.value)), dv))
        # general u^v = exp(v ln u)
        return mul(pow_(u, v), add(mul(dv, call("ln", u)), div(mul(v, du), u)))
    if isinstance(e, Call):
        u = e.arg
        du = differentiate(u)
        fn = e.fn
        if fn == "sin":
            outer = call("cos", u)
        elif fn == "cos":
            outer = neg(call("sin", u))
        elif fn == "tan":
            outer = add(ONE, pow_(call("tan", u), Number(2.0)))
        elif fn == "sinh":
            outer = call("cosh", u)
        elif fn == "cosh":
            outer = call("sinh", u)
        elif fn == "tanh":
            outer = sub(ONE, pow_(call("tanh", u), Number(2.0)))
        elif fn == "exp":
            outer = call("exp", u)
        elif fn == "ln":
            outer = div(ONE, u)
        elif fn == "sqrt":
            outer = div(ONE, mul(Number(2.0), call("sqrt", u)))
        elif fn == "asin":
            outer = div(ONE, call("sqrt", sub(ONE, mul(u, u))))
        elif fn == "acos":
            outer = neg(div(ONE, call("sqrt", sub(ONE, mul(u, u)))))
        elif fn == "atan":
            outer = div(ONE, add(ONE, mul(u, u)))
        elif fn == "asinh":
            outer = div(ONE, call("sqrt", add(ONE, mul(u, u))))
        elif fn == "acosh":
            outer = div(ONE, call("sqrt", sub(mul(u, u), ONE)))
        elif fn == "atanh":
            outer = div(ONE, sub(ONE, mul(u, u)))
        else:  # pragma: no cover - parser only admits known functions
            raise ValueError(f"unknown function {fn!r}")
        return mul(outer, du)
    raise TypeError(f"not an expression node: {e!r}")


# ---------------------------------------------------------------------------
# direct tree-walk evaluation (kernel-backed programs cover the hot paths)

def evaluate(e: Expr, s: float) -> float:
    if isinstance(e, Number):
        return e.value
    if isinstance(e, Var):
        return s
    if isinstance(e, Neg):
        return -evaluate(e.arg, s)
    if isinstance(e, Add):
        return evaluate(e.a, s) + evaluate(e.b, s)
    if isinstance(e, Sub):
        return evaluate(e.a, s) - evaluate(e.b, s)
    if isinstance(e, Mul):
        return evaluate(e.a, s) * evaluate(e.b, s)
    if isinstance(e, Div):
        b = evaluate(e.b, s)
        if b == 0.0:
            return math.nan
        return evaluate(e.a, s) / b
    if isinstance(e, Pow):
        try:
            return math.pow(evaluate(e.a, s), evaluate(e.b, s))
        except (ValueError, OverflowError):
            return math.nan
    if isinstance(e, Call):
        try:
            return _FN_EVAL[e.fn](evaluate(e.arg, s))
        except (ValueError, OverflowError):
            return math.nan
    raise TypeError(f"not an expression node: {e!r}")


# ---------------------------------------------------------------------------
# printing; parse(to_source(e)) evaluates identically to e

_PREC_ADD = 1
_PREC_MUL = 2
_PREC_POW = 4
_PREC_ATOM = 5


def _prec(e: Expr) -> int:
    if isinstance(e, (Add, Sub)):
        return _PREC_ADD
    if isinstance(e, (Mul, Div)):
        return _PREC_MUL
    if isinstance(e, Neg):
        return 3
    if isinstance(e, Pow):
        return _PREC_POW
    return _PREC_ATOM


def _num_text(v: float) -> str:
    return repr(v)


def to_source(e: Expr) -> str:
    if isinstance(e, Number):
        if e.value < 0.0 or (e.value == 0.0 and math.copysign(1.0, e.value) < 0.0):
            return "-" + _num_text(-e.value)
        return _num_text(e.value)
    if isinstance(e, Var):
        return "s"
    if isinstance(e, Call):
        return f"{e.fn}({to_source(e.arg)})"
    if isinstance(e, Neg):
        inner = e.arg
        # The grammar only allows another unary after '-', so anything that
        # is not an atom or a nested negation gets parenthesized.
        if isinstance(inner, (Number, Var, Call, Neg)):
            return "-" + to_source(inner)
        return f"-({to_source(inner)})"
    if isinstance(e, (Add, Sub)):
        op = " + " if isinstance(e, Add) else " - "
        left = to_source(e.a) if _prec(e.a) >= _PREC_ADD else f"({to_source(e.a)})"
        right = to_source(e.b) if _prec(e.b) > _PREC_ADD else f"({to_source(e.b)})"
        return left + op + right
    if isinstance(e, (Mul, Div)):
        op = "*" if isinstance(e, Mul) else "/"
        left = to_source(e.a) if _prec(e.a) >= _PREC_MUL else f"({to_source(e.a)})"
        right = to_source(e.b) if _prec(e.b) > _PREC_MUL else f"({to_source(e.b)})"
        return left + op + right
    if isinstance(e, Pow):
        # base must be a unary, exponent a factor
        base = to_source(e.a) if isinstance(e.a, (Number, Var, Call)) and not (
            isinstance(e.a, Number) and e.a.value < 0.0) else f"({to_source(e.a)})"
        exp = to_source(e.b) if isinstance(e.b, (Number, Var, Call, Neg, Pow)) else f"({to_source(e.b)})"
        return f"{base}^{exp}"
    raise TypeError(f"not an expression node: {e!r}")


def contains_var(e: Expr) -> bool:
    if isinstance(e, Var):
        return True
    if isinstance(e, (Number,)):
        return False
    if isinstance(e, Neg):
        return contains_var(e.arg)
    if isinstance(e, Call):
        return contains_var(e.arg)
    return contains_var(e.a) or contains_var(e.b)
