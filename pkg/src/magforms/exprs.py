"""A small expression language over named forms and series operations.

Grammar (whitespace insensitive)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | power
    power  := atom ('^' INT)?
    atom   := INT | 'q' | NAME | 'f(' INT ',' INT ',' INT ')'
            | 'basis:k=' INT ',m=' INT
            | 'delta(' expr ')' | 'antiderivative(' expr [',' INT] ')'
            | 'dilate(' expr ',' INT ')' | '(' expr ')'

NAME covers the classical forms (E2, E4, E6, Delta, j, theta, E24, F4a, F4b,
F6, LS8, Triple8, HK_num1, HK_num2) and the half-integral ones (g0, g1, g2,
h0, f4a, f4b, f6half).  Evaluation retries with growing working precision
until the requested window is covered; purely polynomial inputs (like ``q``)
may honestly return a smaller window.
"""

from __future__ import annotations

import re

from .series import PrecisionError, QSeries, UsageError
from .forms import FormName, named_form, quasi_monomial
from .halfint import named_plus_form, plus_basis


class ParseError(UsageError):
    """Raised with a position when the expression cannot be parsed."""


_TOKEN_RE = re.compile(
    r"""
    (?P<basis>basis:k=(?P<bk>-?\d+),m=(?P<bm>-?\d+))
  | (?P<number>\d+)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*/^(),])
  | (?P<ws>\s+)
""",
    re.VERBOSE,
)

_FORM_NAMES = {f.value for f in FormName}
_PLUS_NAMES = {"g0", "g1", "g2", "h0", "f4a", "f4b", "f6half"}
_FUNCTIONS = {"delta", "antiderivative", "dilate", "f"}


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ParseError(f"cannot read expression at position {pos}: {text[pos:pos+12]!r}")
        if m.lastgroup != "ws":
            if m.lastgroup == "basis":
                tokens.append(("basis", (int(m.group("bk")), int(m.group("bm"))), pos))
            elif m.lastgroup == "number":
                tokens.append(("number", int(m.group("number")), pos))
            elif m.lastgroup == "name":
                tokens.append(("name", m.group("name"), pos))
            else:
                tokens.append(("op", m.group("op"), pos))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op: str):
        kind, val, pos = self.next()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r} at position {pos}")

    def parse(self):
        node = self.expr()
        kind, _, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected trailing input at position {pos}")
        return node

    def expr(self):
        node = self.term()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.next()
                rhs = self.term()
                node = (val, node, rhs)
            else:
                return node

    def term(self):
        node = self.unary()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "*/":
                self.next()
                rhs = self.unary()
                node = (val, node, rhs)
            else:
                return node

    def unary(self):
        kind, val, _ = self.peek()
        if kind == "op" and val == "-":
            self.next()
            return ("neg", self.unary())
        return self.power()

    def power(self):
        node = self.atom()
        kind, val, _ = self.peek()
        if kind == "op" and val == "^":
            self.next()
            node = ("pow", node, self._signed_int())
        return node

    def _signed_int(self) -> int:
        kind, val, pos = self.next()
        sign = 1
        if kind == "op" and val == "-":
            sign = -1
            kind, val, pos = self.next()
        if kind != "number":
            raise ParseError(f"expected integer at position {pos}")
        return sign * val

    def atom(self):
        kind, val, pos = self.next()
        if kind == "number":
            return ("int", val)
        if kind == "basis":
            return ("basis", val)
        if kind == "op" and val == "(":
            node = self.expr()
            self.expect_op(")")
            return node
        if kind == "name":
            if val == "q":
                return ("q",)
            if val == "f":
                self.expect_op("(")
                a = self._signed_int()
                self.expect_op(",")
                b = self._signed_int()
                self.expect_op(",")
                c = self._signed_int()
                self.expect_op(")")
                return ("monomial", a, b, c)
            if val in ("delta", "antiderivative", "dilate"):
                self.expect_op("(")
                inner = self.expr()
                arg = None
                k2, v2, _ = self.peek()
                if k2 == "op" and v2 == ",":
                    self.next()
                    arg = self._signed_int()
                self.expect_op(")")
                return (val, inner, arg)
            if val in _FORM_NAMES or val in _PLUS_NAMES:
                return ("form", val)
            raise ParseError(f"unknown name {val!r} at position {pos}")
        raise ParseError(f"unexpected token at position {pos}")


def parse_expression(text: str):
    return _Parser(text).parse()


def _eval(node, work: int) -> QSeries:
    op = node[0]
    if op == "int":
        return QSeries(0, [node[1]] + [0] * max(work, 0))
    if op == "q":
        return QSeries.monomial(1, 1, max(work, 1))
    if op == "form":
        name = node[1]
        if name in _PLUS_NAMES:
            return named_plus_form(name, work).series
        return named_form(name, work)
    if op == "monomial":
        a, b, c = node[1], node[2], node[3]
        if a < 0:
            raise UsageError("quasi-monomial needs a >= 0")
        return quasi_monomial(a, b, c, work)
    if op == "basis":
        k, m = node[1]
        return plus_basis(k, [m], work)[m].series
    if op == "neg":
        return -_eval(node[1], work)
    if op == "+":
        return _eval(node[1], work) + _eval(node[2], work)
    if op == "-":
        return _eval(node[1], work) - _eval(node[2], work)
    if op == "*":
        return _eval(node[1], work) * _eval(node[2], work)
    if op == "/":
        return _eval(node[1], work) / _eval(node[2], work)
    if op == "pow":
        return _eval(node[1], work) ** node[2]
    if op == "delta":
        return _eval(node[1], work).delta()
    if op == "antiderivative":
        order = 1 if node[2] is None else node[2]
        return _eval(node[1], work).antiderivative(order)
    if op == "dilate":
        if node[2] is None:
            raise UsageError("dilate needs a positive integer argument")
        return _eval(node[1], work).substitute_power(node[2])
    raise UsageError(f"unhandled node {op!r}")


def _trim_trailing_zeros(f: QSeries) -> QSeries:
    hi = f.prec
    while hi > f.lead and f._get(hi) == 0:
        hi -= 1
    return f.truncate(hi)


def evaluate(text: str, prec: int, trim: bool = False) -> QSeries:
    """Evaluate an expression so its window covers q^prec when possible."""
    ast = parse_expression(text)
    slack = 0
    last = None
    for _ in range(6):
        out = _eval(ast, prec + slack)
        if out.prec >= prec:
            result = out.truncate(prec)
            return _trim_trailing_zeros(result) if trim else result
        if last is not None and out.prec == last:
            # widening the working precision no longer helps: the expression
            # itself carries only finitely many known exponents (e.g. "q")
            return _trim_trailing_zeros(out) if trim else out
        last = out.prec
        slack = max(16, slack * 4)
    raise PrecisionError(f"expression does not reach precision {prec}")


def normalize(text: str) -> str:
    """Whitespace-insensitive canonical key for caching."""
    return re.sub(r"\s+", "", text)
