"""Tokenizer and polynomial-expression grammar shared by ``poly`` and ``dsl``.

Expression grammar (LL(1))::

    expr   := ['+' | '-'] term (('+' | '-') term)*
    term   := factor (['*' | '/'] factor)*      # '*' may be omitted
    factor := atom ['^' NUMBER]
    atom   := NUMBER | IDENT | '(' expr ')'
"""

import dataclasses
import re
from fractions import Fraction

from .errors import ParseError

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<comment>\#[^\n]*)
  | (?P<arrow>->)
  | (?P<number>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<punct>[-+*/^()\[\]{},;=:])
    """,
    re.VERBOSE,
)


@dataclasses.dataclass(frozen=True)
class Token:
    kind: str  # "number", "ident", "punct", "eof"
    text: str
    line: int
    column: int

    def describe(self):
        return "end of input" if self.kind == "eof" else repr(self.text)


def tokenize(text):
    tokens = []
    line, line_start, pos = 1, 0, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind in ("number", "ident"):
            tokens.append(Token(kind, m.group(), line, pos - line_start + 1))
        elif kind in ("punct", "arrow"):
            tokens.append(Token("punct", m.group(), line, pos - line_start + 1))
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


# -- expression AST ---------------------------------------------------------


@dataclasses.dataclass(frozen=True)
class Num:
    value: Fraction


@dataclasses.dataclass(frozen=True)
class Var:
    name: str


@dataclasses.dataclass(frozen=True)
class Neg:
    operand: object


@dataclasses.dataclass(frozen=True)
class BinOp:
    op: str  # one of + - * /
    left: object
    right: object


@dataclasses.dataclass(frozen=True)
class Pow:
    base: object
    exponent: int


def _prec(e):
    if isinstance(e, (Num, Var)):
        return 4
    if isinstance(e, Pow):
        return 3
    if isinstance(e, BinOp) and e.op in "*/":
        return 2
    return 1


def _wrap(e, need):
    s = expr_to_source(e)
    return s if _prec(e) >= need else f"({s})"


def expr_to_source(e):
    """Source text with the fewest parentheses; reparses to an equal AST."""
    if isinstance(e, Num):
        v = e.value
        if v.denominator == 1 and v >= 0:
            return str(v.numerator)
        return f"({v.numerator}/{v.denominator})" if v.denominator != 1 else f"({v.numerator})"
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Neg):
        return f"-{_wrap(e.operand, 2)}"
    if isinstance(e, Pow):
        return f"{_wrap(e.base, 4)}^{e.exponent}"
    if isinstance(e, BinOp):
        if e.op in "+-":
            return f"{_wrap(e.left, 1)} {e.op} {_wrap(e.right, 2)}"
        return f"{_wrap(e.left, 2)}{e.op}{_wrap(e.right, 3)}"
    raise TypeError(e)


def evaluate(e, env):
    """Evaluate an expression AST.  ``env`` maps identifiers to values that
    support ring arithmetic (typically :class:`~affinemod.poly.Polynomial`)."""
    if isinstance(e, Num):
        return e.value
    if isinstance(e, Var):
        try:
            return env[e.name]
        except KeyError:
            raise ParseError(f"unknown variable {e.name!r}") from None
    if isinstance(e, Neg):
        return -evaluate(e.operand, env)
    if isinstance(e, Pow):
        return evaluate(e.base, env) ** e.exponent
    a, b = evaluate(e.left, env), evaluate(e.right, env)
    if e.op == "+":
        return a + b
    if e.op == "-":
        return a - b
    if e.op == "*":
        return a * b
    if not isinstance(b, (int, Fraction)):
        if not b.is_constant():
            raise ParseError("division is only allowed by nonzero constants")
        b = b.constant_value()
    if b == 0:
        raise ParseError("division by zero")
    return a * Fraction(1, b) if isinstance(b, int) else a * (1 / b)


# -- parser -----------------------------------------------------------------

_ATOM_START = ("number", "ident")


class TokenStream:
    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0

    @property
    def peek(self):
        return self.tokens[self.pos]

    def next(self):
        tok = self.tokens[self.pos]
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def ahead(self, offset=1):
        return self.tokens[min(self.pos + offset, len(self.tokens) - 1)]

    def at(self, text):
        tok = self.peek
        return tok.kind == "punct" and tok.text == text

    def at_keyword(self, word):
        tok = self.peek
        return tok.kind == "ident" and tok.text == word

    def accept(self, text):
        if self.at(text):
            return self.next()
        return None

    def error(self, expected, message=None):
        tok = self.peek
        msg = message or f"unexpected {tok.describe()}"
        raise ParseError(msg, tok.line, tok.column, expected)

    def expect(self, text):
        if not self.at(text):
            self.error({repr(text)})
        return self.next()

    def expect_kind(self, kind, what=None):
        if self.peek.kind != kind:
            self.error({what or kind})
        return self.next()


def _starts_atom(ts):
    tok = ts.peek
    return tok.kind in _ATOM_START or (tok.kind == "punct" and tok.text == "(")


def _starts_field(ts):
    # ``name =`` begins the next record field, so juxtaposition stops here
    nxt = ts.ahead()
    return ts.peek.kind == "ident" and nxt.kind == "punct" and nxt.text == "="


def parse_expr(ts):
    sign = None
    if ts.at("-") or ts.at("+"):
        sign = ts.next().text
    if not _starts_atom(ts):
        ts.error({"number", "identifier", "'('"})
    node = _parse_term(ts)
    if sign == "-":
        node = Neg(node)
    while ts.at("+") or ts.at("-"):
        op = ts.next().text
        if not _starts_atom(ts):
            ts.error({"number", "identifier", "'('"})
        node = BinOp(op, node, _parse_term(ts))
    return node


def _parse_term(ts):
    node = _parse_factor(ts)
    while True:
        if ts.at("*") or ts.at("/"):
            op = ts.next().text
            if not _starts_atom(ts):
                ts.error({"number", "identifier", "'('"})
            node = BinOp(op, node, _parse_factor(ts))
        elif _starts_atom(ts) and not _starts_field(ts):
            node = BinOp("*", node, _parse_factor(ts))
        else:
            return node


def _parse_factor(ts):
    base = _parse_atom(ts)
    if ts.accept("^"):
        exp = ts.expect_kind("number", "exponent")
        return Pow(base, int(exp.text))
    return base


def _parse_atom(ts):
    tok = ts.peek
    if tok.kind == "number":
        ts.next()
        return Num(Fraction(int(tok.text)))
    if tok.kind == "ident":
        ts.next()
        return Var(tok.text)
    if ts.accept("("):
        node = parse_expr(ts)
        ts.expect(")")
        return node
    ts.error({"number", "identifier", "'('"})


def parse_expression(text):
    """Parse a standalone expression (the whole text must be consumed)."""
    ts = TokenStream(tokenize(text))
    node = parse_expr(ts)
    if ts.peek.kind != "eof":
        ts.error({"operator", "end of input"})
    return node
