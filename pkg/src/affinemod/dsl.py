"""Script language: parser, AST and canonical printer.

Grammar (every statement ends with ``;``)::

    script     := statement*
    statement  := declaration ';' | ['let' IDENT '='] command ';'
    declaration:= 'ring' IDENT '=' 'Q' '[' idents ']' ['/' '(' exprs ')']
                | 'ideal' IDENT '=' '(' [exprs] ')' ['in' IDENT]
                | 'weights' IDENT '=' '{' [weight (',' weight)*] '}'
                | 'derivation' IDENT '=' '{' [image (',' image)*] '}' ['on' IDENT]
                | 'modify' IDENT '=' '(' IDENT ',' expr ')' ['seq' '(' exprs ')']
                                    ['power' '(' expr ',' NUMBER ')']
                | 'family' IDENT '{' item* '}'
    weight     := IDENT ':' '(' int (',' int)* ')'
    image      := IDENT '->' expr
    item       := IDENT '=' value [',']
    value      := int | '[' [value (',' value)*] ']' | '{' item* '}' | expr
    command    := IDENT [arg (',' arg)*]
    arg        := '[' [arg (',' arg)*] ']' | expr

Expressions follow :mod:`affinemod.syntax`.
"""

import dataclasses

from .errors import ParseError
from .syntax import Num, TokenStream, Var, expr_to_source, parse_expr, tokenize

KEYWORDS = ("ring", "ideal", "weights", "derivation", "modify", "family", "let")


@dataclasses.dataclass(frozen=True)
class Span:
    line: int
    column: int


def _span(tok):
    return Span(tok.line, tok.column)


def _field_span():
    return dataclasses.field(default=None, compare=False, repr=False)


@dataclasses.dataclass(frozen=True)
class RingDecl:
    name: str
    variables: tuple
    relations: tuple = ()
    span: Span = _field_span()


@dataclasses.dataclass(frozen=True)
class IdealDecl:
    name: str
    gens: tuple
    ring: str = None
    span: Span = _field_span()


@dataclasses.dataclass(frozen=True)
class WeightsDecl:
    name: str
    entries: tuple  # ((variable, (ints...)), ...)
    span: Span = _field_span()


@dataclasses.dataclass(frozen=True)
class DerivationDecl:
    name: str
    images: tuple  # ((variable, expr), ...)
    ring: str = None
    span: Span = _field_span()


@dataclasses.dataclass(frozen=True)
class ModifyDecl:
    name: str
    ideal: str
    f: object
    seq: tuple = None
    power: tuple = None  # (expr, int)
    span: Span = _field_span()


@dataclasses.dataclass(frozen=True)
class ListValue:
    items: tuple
    span: Span = _field_span()


@dataclasses.dataclass(frozen=True)
class RecordValue:
    items: tuple  # ((key, value), ...)
    span: Span = _field_span()


@dataclasses.dataclass(frozen=True)
class FamilyDecl:
    name: str
    items: tuple
    span: Span = _field_span()


@dataclasses.dataclass(frozen=True)
class Command:
    name: str
    args: tuple
    target: str = None
    span: Span = _field_span()


@dataclasses.dataclass(frozen=True)
class Script:
    statements: tuple

    def __len__(self):
        return len(self.statements)


# -- parser -----------------------------------------------------------------------


class _Parser:
    def __init__(self, text):
        self.ts = TokenStream(tokenize(text))
        self.declared = set()

    def ident(self, what="identifier"):
        return self.ts.expect_kind("ident", what).text

    def declare(self, name, tok):
        if name in self.declared:
            raise ParseError(f"name {name!r} is already defined", tok.line, tok.column)
        self.declared.add(name)

    def use(self, name, tok):
        if name not in self.declared:
            raise ParseError(f"undefined name {name!r}", tok.line, tok.column)

    def script(self):
        stmts = []
        while self.ts.peek.kind != "eof":
            stmts.append(self.statement())
            self.ts.expect(";")
        return Script(tuple(stmts))

    def statement(self):
        tok = self.ts.peek
        if tok.kind != "ident":
            self.ts.error({"declaration", "command"})
        word = tok.text
        if word in ("ring", "ideal", "weights", "derivation", "modify", "family"):
            return getattr(self, f"decl_{word}")()
        if word == "let":
            self.ts.next()
            name_tok = self.ts.peek
            name = self.ident("binding name")
            self.ts.expect("=")
            cmd = self.command()
            self.declare(name, name_tok)
            return dataclasses.replace(cmd, target=name)
        return self.command()

    def exprs(self, close=")"):
        items = []
        if self.ts.at(close):
            return tuple(items)
        items.append(parse_expr(self.ts))
        while self.ts.accept(","):
            items.append(parse_expr(self.ts))
        return tuple(items)

    def decl_ring(self):
        start = self.ts.next()
        name_tok = self.ts.peek
        name = self.ident("ring name")
        self.ts.expect("=")
        q = self.ts.peek
        if not (q.kind == "ident" and q.text == "Q"):
            self.ts.error({"'Q'"})
        self.ts.next()
        self.ts.expect("[")
        names = [self.ident("variable")]
        while self.ts.accept(","):
            names.append(self.ident("variable"))
        self.ts.expect("]")
        rels = ()
        if self.ts.accept("/"):
            self.ts.expect("(")
            rels = self.exprs()
            self.ts.expect(")")
        self.declare(name, name_tok)
        return RingDecl(name, tuple(names), rels, _span(start))

    def optional_ref(self, keyword):
        if self.ts.at_keyword(keyword):
            self.ts.next()
            tok = self.ts.peek
            ref = self.ident("ring name")
            self.use(ref, tok)
            return ref
        return None

    def decl_ideal(self):
        start = self.ts.next()
        name_tok = self.ts.peek
        name = self.ident("ideal name")
        self.ts.expect("=")
        self.ts.expect("(")
        gens = self.exprs()
        self.ts.expect(")")
        ring = self.optional_ref("in")
        self.declare(name, name_tok)
        return IdealDecl(name, gens, ring, _span(start))

    def integer(self):
        neg = bool(self.ts.accept("-"))
        tok = self.ts.expect_kind("number", "integer")
        return -int(tok.text) if neg else int(tok.text)

    def decl_weights(self):
        start = self.ts.next()
        name_tok = self.ts.peek
        name = self.ident("weights name")
        self.ts.expect("=")
        self.ts.expect("{")
        entries = []
        while not self.ts.at("}"):
            var = self.ident("variable")
            self.ts.expect(":")
            self.ts.expect("(")
            vec = [self.integer()]
            while self.ts.accept(","):
                vec.append(self.integer())
            self.ts.expect(")")
            entries.append((var, tuple(vec)))
            if not self.ts.accept(","):
                break
        self.ts.expect("}")
        self.declare(name, name_tok)
        return WeightsDecl(name, tuple(entries), _span(start))

    def decl_derivation(self):
        start = self.ts.next()
        name_tok = self.ts.peek
        name = self.ident("derivation name")
        self.ts.expect("=")
        self.ts.expect("{")
        images = []
        while not self.ts.at("}"):
            var = self.ident("variable")
            self.ts.expect("->")
            images.append((var, parse_expr(self.ts)))
            if not self.ts.accept(","):
                break
        self.ts.expect("}")
        ring = self.optional_ref("on")
        self.declare(name, name_tok)
        return DerivationDecl(name, tuple(images), ring, _span(start))

    def decl_modify(self):
        start = self.ts.next()
        name_tok = self.ts.peek
        name = self.ident("locus name")
        self.ts.expect("=")
        self.ts.expect("(")
        ideal_tok = self.ts.peek
        ideal = self.ident("ideal name")
        self.use(ideal, ideal_tok)
        self.ts.expect(",")
        f = parse_expr(self.ts)
        self.ts.expect(")")
        seq = power = None
        if self.ts.at_keyword("seq"):
            self.ts.next()
            self.ts.expect("(")
            seq = self.exprs()
            self.ts.expect(")")
        if self.ts.at_keyword("power"):
            self.ts.next()
            self.ts.expect("(")
            g = parse_expr(self.ts)
            self.ts.expect(",")
            n = int(self.ts.expect_kind("number", "exponent").text)
            self.ts.expect(")")
            power = (g, n)
        self.declare(name, name_tok)
        return ModifyDecl(name, ideal, f, seq, power, _span(start))

    def value(self):
        tok = self.ts.peek
        if self.ts.accept("["):
            items = []
            if not self.ts.at("]"):
                items.append(self.value())
                while self.ts.accept(","):
                    items.append(self.value())
            self.ts.expect("]")
            return ListValue(tuple(items), _span(tok))
        if self.ts.accept("{"):
            items = self.items("}")
            self.ts.expect("}")
            return RecordValue(items, _span(tok))
        return parse_expr(self.ts)

    def items(self, close):
        items = []
        while not self.ts.at(close):
            key = self.ident("field name")
            self.ts.expect("=")
            items.append((key, self.value()))
            self.ts.accept(",")
        return tuple(items)

    def decl_family(self):
        start = self.ts.next()
        name_tok = self.ts.peek
        name = self.ident("family name")
        self.ts.expect("{")
        items = self.items("}")
        self.ts.expect("}")
        self.declare(name, name_tok)
        return FamilyDecl(name, items, _span(start))

    def arg(self):
        tok = self.ts.peek
        if self.ts.accept("["):
            items = []
            if not self.ts.at("]"):
                items.append(self.arg())
                while self.ts.accept(","):
                    items.append(self.arg())
            self.ts.expect("]")
            return ListValue(tuple(items), _span(tok))
        return parse_expr(self.ts)

    def command(self):
        tok = self.ts.peek
        name = self.ident("command")
        args = []
        if not self.ts.at(";"):
            args.append(self.arg())
            while self.ts.accept(","):
                args.append(self.arg())
        return Command(name, tuple(args), None, _span(tok))


def parse(text):
    """Parse a script; raises :class:`ParseError` with line/column on failure."""
    return _Parser(text).script()


# -- printer ----------------------------------------------------------------------


def _exprs(items):
    return ", ".join(expr_to_source(e) for e in items)


def _value(v):
    if isinstance(v, ListValue):
        return "[" + ", ".join(_value(x) for x in v.items) + "]"
    if isinstance(v, RecordValue):
        return "{" + " ".join(f"{k}={_value(x)}" for k, x in v.items) + "}"
    if isinstance(v, Num) and v.value.denominator == 1 and v.value >= 0:
        return str(v.value.numerator)
    return expr_to_source(v)


def format_statement(s):
    if isinstance(s, RingDecl):
        out = f"ring {s.name} = Q[{', '.join(s.variables)}]"
        if s.relations:
            out += f" / ({_exprs(s.relations)})"
        return out
    if isinstance(s, IdealDecl):
        out = f"ideal {s.name} = ({_exprs(s.gens)})"
        return out + (f" in {s.ring}" if s.ring else "")
    if isinstance(s, WeightsDecl):
        body = ", ".join(f"{v}: ({', '.join(str(x) for x in vec)})" for v, vec in s.entries)
        return f"weights {s.name} = {{{body}}}"
    if isinstance(s, DerivationDecl):
        body = ", ".join(f"{v} -> {expr_to_source(e)}" for v, e in s.images)
        out = f"derivation {s.name} = {{{body}}}"
        return out + (f" on {s.ring}" if s.ring else "")
    if isinstance(s, ModifyDecl):
        out = f"modify {s.name} = ({s.ideal}, {expr_to_source(s.f)})"
        if s.seq is not None:
            out += f" seq ({_exprs(s.seq)})"
        if s.power is not None:
            out += f" power ({expr_to_source(s.power[0])}, {s.power[1]})"
        return out
    if isinstance(s, FamilyDecl):
        return f"family {s.name} {{" + "".join(f" {k}={_value(v)}" for k, v in s.items) + " }"
    if isinstance(s, Command):
        out = s.name
        if s.args:
            out += " " + ", ".join(_value(a) for a in s.args)
        return f"let {s.target} = {out}" if s.target else out
    raise TypeError(s)


def format_script(script):
    return "".join(format_statement(s) + ";\n" for s in script.statements)


def is_name(expr):
    return isinstance(expr, Var)
