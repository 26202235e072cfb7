"""Small worked examples across the modules, with independent oracles where noted."""

import pytest
import sympy

from affinemod import Ideal, MonomialOrder, PresentedAlgebra, Ring, WeightFunction
from affinemod.certificate import Block, FamilyParams, build_family, ml_report
from affinemod.derivation import NILPOTENT, NOT_NILPOTENT, Derivation, degree, derive, exp_action, kernel_member, lnd_check
from affinemod.errors import PreconditionError
from affinemod.grading import convention51_weights, gr_element, homogeneous_irreducible_candidates
from affinemod.ideal import (
    colon_ideal,
    dimension,
    eliminate,
    generic_semiregular_extension,
    gradient_generic_independence,
    ideal_equal,
    is_regular_sequence,
    is_semiregular_sequence,
    is_unit_ideal,
    membership,
    normal_form,
)
from affinemod.modification import (
    ModificationLocus,
    basic_step,
    compose_split,
    davis_presentation,
    fiber_product_presentation,
    modification_ideals,
)
from affinemod.poly import jacobian_determinant, principal_component, squarefree_part, weight_degree

F5 = Ring(["x", "y", "z", "v1", "v2"])
P1 = F5.parse("x*v1 - y^3 + z^2")
P2 = F5.parse("x*v2 - v1^2")
R2 = Ring(["x", "y"])
R3 = Ring(["x", "y", "z"])


def sym(p):
    return sympy.expand(sympy.sympify(str(p).replace("^", "**")))


# -- polynomials ------------------------------------------------------------------


def test_basic_arithmetic():
    x, y = R2.gens()
    assert (x + y) + (x - y) == 2 * x
    assert (y - 1) * y == y**2 - y
    assert (x * y) * 0 == 0
    assert R3.parse("y^3 - z^2").diff("y") == R3.parse("3*y^2")
    assert R3.const(7).diff("x") == 0


def test_family_jacobians():
    assert jacobian_determinant([P1, P2], ["v1", "v2"]) == F5.parse("x^2")
    assert jacobian_determinant([F5.gen("x")], ["x"]) == 1
    a, b, c = F5.gen("y"), F5.gen("z"), F5.gen("x")
    ours = jacobian_determinant([P1, P2, a, b, c], list(F5.names))
    syms = sympy.symbols("x y z v1 v2")
    rows = [sym(p) for p in (P1, P2, a, b, c)]
    oracle = sympy.Matrix([[sympy.diff(r, v) for v in syms] for r in rows]).det()
    assert sym(ours) == sympy.expand(oracle)
    assert sym(ours) == sympy.expand(sympy.sympify("x**2"))


def test_family_weight_ties():
    w = convention51_weights(3, 2, [2], e=60)
    assert weight_degree(F5.parse("y^3"), w) == weight_degree(F5.parse("z^2"), w) == (6, 0)
    assert weight_degree(F5.parse("x*v1"), w) == (6, 0)
    assert weight_degree(F5.one(), w) == (0, 0)
    assert principal_component(F5.parse("x*v2 - v1^2 + y"), w) == P2
    assert principal_component(P1, w) == P1
    assert principal_component(R2.parse("y^2 + y"), WeightFunction({"y": (1,)})) == R2.parse("y^2")


def test_squarefree():
    assert squarefree_part(R2.parse("x^2")) == R2.parse("x")
    assert squarefree_part(R2.parse("x^2*(x - 1)")) == R2.parse("x^2 - x")
    assert squarefree_part(R2.parse("y^2 - y")) == R2.parse("y^2 - y")


# -- ideals -----------------------------------------------------------------------


def test_small_bases():
    lex = MonomialOrder.lex(R3)
    I = Ideal(R3, ["x*z - y^2 + y"])
    assert list(I.groebner(lex)) == [R3.parse("x*z - y^2 + y")]
    assert sorted(str(g) for g in Ideal(R2, ["x", "y^2 - y"]).groebner(MonomialOrder.lex(R2))) == ["x", "y^2 - y"]
    # hand Buchberger: one S-polynomial
    G = Ideal(R2, ["x*y - 1", "y^2 - 1"]).groebner(MonomialOrder.lex(R2))
    assert sorted(str(g) for g in G) == ["x - y", "y^2 - 1"]


def test_small_normal_forms():
    dan = Ideal(R3, ["x*z - y^2 + y"])
    assert normal_form(R3.parse("x*z"), dan, MonomialOrder.lex(R3)) == R3.parse("y^2 - y")
    # degrevlex leads with y^2 instead, so x*z is already reduced
    assert normal_form(R3.parse("x*z"), dan) == R3.parse("x*z")
    S = Ring(["x", "y", "u"])
    order = MonomialOrder.lex(S, ["y", "x", "u"])
    assert normal_form(S.parse("y"), Ideal(S, ["x*u - y"]), order) == S.parse("x*u")
    g = R3.parse("x^2 - y*z")
    assert normal_form(g, Ideal(R3, [g])).is_zero()


def test_membership_and_equality():
    I = Ideal(R2, ["x", "y^2 - y"])
    assert membership(R2.parse("y^2 - y"), I)
    assert not membership(R2.parse("y"), I)
    # evaluation witness: generators vanish at (0, 1) but y does not
    assert all(g.evaluate({"x": 0, "y": 1}) == 0 for g in I.gens)
    fam = build_family(FamilyParams(3, 2, (2,), ("y",)))
    assert membership(fam.xprime.ring.parse("x*v1 - y^3 + z^2"), fam.xprime.ideal)
    assert ideal_equal(I, Ideal(R2, ["x", "y^2 - y", "x*y"]))
    assert is_unit_ideal(Ideal(R2, ["x - 1", "x"]))
    assert not ideal_equal(Ideal(R2, ["x^2", "y^2"]), Ideal(R2, ["x", "y"]))


def test_elimination_examples():
    el = eliminate(Ideal(R3, ["x", "x*z - y^2 + y"]), ["z"])
    assert ideal_equal(el, Ideal(el.ring, ["x", "y^2 - y"]))
    S = Ring(["x", "y", "u"])
    assert eliminate(Ideal(S, ["x*u - y"]), ["u"]).gens == ()
    same = eliminate(Ideal(R2, ["x"]), [])
    assert ideal_equal(same, Ideal(R2, ["x"]))


def test_colon_examples():
    assert ideal_equal(colon_ideal(Ideal(R2, ["x^2"]), "x"), Ideal(R2, ["x"]))
    assert ideal_equal(colon_ideal(Ideal(R2, ["x^2", "x*y"]), "x"), Ideal(R2, ["x", "y"]))
    assert ideal_equal(colon_ideal(Ideal(R2, ["x"]), "y"), Ideal(R2, ["x"]))


def test_dimension_examples():
    assert dimension(Ideal(R3, ["x", "y^3 - z^2"])) == 1
    assert dimension(Ideal(R3, [])) == 3
    assert dimension(Ideal(R3, ["1"])) == -1


def test_sequence_examples():
    x, y, z = R3.gens()
    assert is_regular_sequence([x, y], R3)
    assert not is_regular_sequence([x, x * y], R3)
    assert is_regular_sequence([R2.parse("x^2"), R2.parse("y^2")], R2)
    assert is_semiregular_sequence([x, y**3 - z**2], R3)
    assert not is_semiregular_sequence([x, x * y], R3)
    assert is_semiregular_sequence([x, y, z], R3)
    assert gradient_generic_independence([x, y], R3)
    assert gradient_generic_independence([x, y**3 - z**2], R3)


def test_extension_examples():
    seq = generic_semiregular_extension(Ideal(R2, ["x", "y^2 - y"]), "x", 2, seed=1)
    assert seq[0] == R2.parse("x") and is_semiregular_sequence(seq, R2)
    assert dimension(Ideal(R2, seq)) == 0
    seq = generic_semiregular_extension(Ideal(R3, ["x", "y", "z"]), "x", 3, seed=1)
    assert is_semiregular_sequence(seq, R3)
    with pytest.raises(PreconditionError):
        generic_semiregular_extension(Ideal(R2, ["x"]), "x", 2)


# -- modifications ----------------------------------------------------------------


def test_trivial_locus():
    loc = ModificationLocus.make(R2, ["x"], "x")
    pres = davis_presentation(loc)
    assert pres.relations == ()
    ideals = modification_ideals(loc, pres)
    assert [str(g) for g in ideals.exceptional.groebner()] == ["x"]
    assert [str(g) for g in ideals.center.groebner()] == ["x"]


def test_split_of_square_modulus():
    loc = ModificationLocus.make(R2, ["x^2", "y"], "x^2")
    res = compose_split(loc, "x", "x")
    assert res.verified
    assert [str(r) for r in res.first.relations] == ["x*z - y"]
    res = compose_split(ModificationLocus.make(R3, ["x", "y"], "x"), "x", "1")
    assert res.verified


def test_fiber_product_of_two_danielewski_blocks():
    m0 = ModificationLocus.make(R3, ["x", "y^2 - y"], "x")
    m1 = ModificationLocus.make(R3, ["x - 1", "y^2 - y"], "x - 1")
    fp = fiber_product_presentation([m0, m1])
    assert fp.ring.ngens == 5
    assert [str(r) for r in fp.algebra.relations] == ["-y^2 + x*u + y", "-y^2 + x*v + y - v"]
    single = fiber_product_presentation([m0])
    assert [str(r) for r in single.algebra.relations] == ["-y^2 + x*u + y"]
    with pytest.raises(PreconditionError):
        fiber_product_presentation([m0, ModificationLocus.make(R3, ["x", "y"], "x")])


def test_point_center_gives_affine_space():
    step = basic_step(PresentedAlgebra(R3), "x", ["x", "y", "z"], names=["u", "v"])
    small, subst = step.next.algebra.simplify()
    assert small.ring.names == ("x", "u", "v") and small.relations == ()
    assert str(subst["y"]) == "x*u" and str(subst["z"]) == "x*v"


# -- grading ----------------------------------------------------------------------


def test_two_root_family_block_degenerates():
    fam = build_family(FamilyParams(3, 2, (2,), ("y",), (Block(1, (2,)),)))
    R = fam.xprime.ring
    expected = Ideal(R, ["x*v1 - y^3 + z^2", "x*v2 - v1^2", "u1_1", "u1_2"])
    assert ideal_equal(fam.graded_full.ideal, expected)
    rels = [str(r) for r in fam.xprime.relations]
    assert "-y^3 + z^2 + x*u1_1 - u1_1" in rels


def test_gr_examples():
    fam = build_family(FamilyParams(3, 2, (2,), ("y",)))
    gp = fam.xhat
    R = gp.ring
    assert gr_element(R.parse("y"), gp) == R.parse("y")
    g = gr_element(R.parse("y^3 - z^2"), gp)
    assert not membership(R.parse("y^3 - z^2"), gp.ideal)
    assert membership(R.parse("y^3 - z^2") - g, gp.ideal)
    assert gp.algebra.equal(gr_element(R.parse("x*v2"), gp), R.parse("v1^2"))
    cands = homogeneous_irreducible_candidates(gp, 3, 2, 2)
    assert len(cands) == 6 and sum(c.kind == "binomial" for c in cands) == 1


# -- derivations ------------------------------------------------------------------

DAN = PresentedAlgebra(R3, ["x*z - y^2 + y"])


def test_danielewski_derivation():
    D = Derivation(DAN, {"x": 0, "y": "x", "z": "2*y - 1"})
    assert D.apply_raw(R3.parse("x*z - y^2 + y")) == 0
    v = lnd_check(D)
    assert v.status == NILPOTENT and v.degrees == {"x": 0, "y": 1, "z": 2}
    assert degree(D, R3.parse("z")).degree == 2
    assert degree(D, R3.parse("5")).degree == 0
    assert degree(D, R3.parse("y")).degree == 1
    assert str(exp_action(D, R3.parse("y"))) == "x*t + y"
    assert exp_action(D, R3.parse("x*z - y^2 + y")).is_zero()
    assert kernel_member(D, R3.parse("x"))
    assert not kernel_member(D, R3.parse("y"))
    assert kernel_member(D, R3.one())


def test_partial_z():
    D = Derivation(R3, {"z": 1})
    assert derive(D, R3.parse("z^2")) == R3.parse("2*z")
    assert derive(D, R3.parse("4")) == 0
    assert str(exp_action(D, R3.parse("z"))) == "z + t"


def test_euler_derivation_on_line():
    R1 = Ring(["x"])
    v = lnd_check(Derivation(R1, {"x": "x"}))
    assert v.status == NOT_NILPOTENT and str(v.witness) == "x"


# -- certificate ------------------------------------------------------------------


def test_family_without_tail():
    fam = build_family(FamilyParams(3, 2, (2,), ("0",)))
    assert [str(r) for r in fam.xprime.relations] == ["-y^3 + z^2 + x*v1", "-v1^2 + x*v2"]
    rep = ml_report(FamilyParams(3, 2, (2,), ("0",)))
    assert rep.status == "certified-conditional"
    assert rep.survivors == (("x", "y"), ("x", "z"))


def test_tails_do_not_change_graded_system():
    a = build_family(FamilyParams(3, 2, (2,), ("0",)))
    b = build_family(FamilyParams(3, 2, (2,), ("y",)))
    assert ideal_equal(a.xhat.ideal, b.xhat.ideal)
