import pytest
from hypothesis import given
from hypothesis import strategies as st

from affinemod.dsl import Command, FamilyDecl, ModifyDecl, RingDecl, format_script, parse
from affinemod.errors import ParseError
from affinemod.syntax import BinOp, Neg, Num, Pow, Var, expr_to_source, parse_expression

SMOKE = "ring A = Q[x,y]; ideal I = (x, y^2 - y); modify M = (I, x); davis M;"
FAMILY = "family F { k=3 l=2 n=[2] q=[0] }; mlcert F;"


def test_smoke_script_has_four_statements():
    script = parse(SMOKE)
    assert len(script) == 4
    assert isinstance(script.statements[0], RingDecl)
    assert isinstance(script.statements[2], ModifyDecl)
    assert script.statements[3] == Command("davis", (Var("M"),))


def test_family_script_round_trips():
    script = parse(FAMILY)
    fam = script.statements[0]
    assert isinstance(fam, FamilyDecl)
    assert [k for k, _ in fam.items] == ["k", "l", "n", "q"]
    assert parse(format_script(script)) == script


def test_double_comma_is_a_syntax_error():
    with pytest.raises(ParseError) as info:
        parse("ring A = Q[x,y]; ideal I = (x,,y);")
    err = info.value
    assert (err.line, err.column) == (1, 31)
    assert err.expected


def test_undefined_and_reassigned_names():
    with pytest.raises(ParseError, match="undefined"):
        parse("ring A = Q[x]; modify M = (I, x);")
    with pytest.raises(ParseError, match="already defined"):
        parse("ring A = Q[x]; ring A = Q[y];")


def test_error_position_on_later_line():
    with pytest.raises(ParseError) as info:
        parse("ring A = Q[x];\nideal I = (x +);")
    assert info.value.line == 2


def test_spans_recorded():
    script = parse("ring A = Q[x];\n  davis A;")
    assert script.statements[1].span.line == 2
    assert script.statements[1].span.column == 3


def test_let_and_options_round_trip():
    text = """
    ring A = Q[x, y, z] / (x*y - z^2);
    ideal I = (x, z) in A;
    modify M = (I, x) seq (x, z) power (x, 1);
    weights W = {x: (-1, 2), y: (3, 0)};
    derivation D = {x -> 0, y -> -2*z, z -> x} on A;
    let B = davis M;
    family F { k=5 l=2 n=[2, 3] q=[y, 0] blocks=[{c=1 n=[2] r=[y^5 - z^2, 0]}] };
    basicstep A, x, [x, z], [u];
    """
    script = parse(text)
    assert parse(format_script(script)) == script
    assert format_script(parse(format_script(script))) == format_script(script)


def _exprs():
    leaves = st.one_of(st.sampled_from([Var("x"), Var("y"), Var("v1")]), st.integers(0, 9).map(lambda n: Num(n)))
    return st.recursive(
        leaves,
        lambda sub: st.one_of(
            st.builds(BinOp, st.sampled_from("+-*"), sub, sub),
            st.builds(Pow, sub, st.integers(0, 4)),
            st.builds(Neg, sub),
        ),
        max_leaves=8,
    )


def _normalise(e):
    # Num values compare as Fractions after parsing
    from fractions import Fraction

    if isinstance(e, Num):
        return Num(Fraction(e.value))
    if isinstance(e, Neg):
        return Neg(_normalise(e.operand))
    if isinstance(e, Pow):
        return Pow(_normalise(e.base), e.exponent)
    if isinstance(e, BinOp):
        return BinOp(e.op, _normalise(e.left), _normalise(e.right))
    return e


@given(_exprs())
def test_expression_print_reparse_identity(e):
    e = _normalise(e)
    assert parse_expression(expr_to_source(e)) == e


@given(_exprs(), _exprs())
def test_command_print_reparse_identity(a, b):
    from affinemod.dsl import ListValue, Script, format_statement

    cmd = Command("gr", (Var("G"), _normalise(a), ListValue((_normalise(b),))))
    script = Script((RingDecl("G", ("x", "y", "v1")), cmd))
    assert parse(format_script(script)) == script
