import pytest

from affinemod import PresentedAlgebra, Ring, WeightFunction
from affinemod.certificate import FamilyParams, build_family
from affinemod.errors import PreconditionError
from affinemod.grading import (
    convention51_weights,
    family_names,
    gr_element,
    graded_ideal,
    homogeneous_irreducible_candidates,
    minimal_degree,
    minimal_representative,
)
from affinemod.ideal import Ideal, ideal_equal

DEFAULT = FamilyParams(3, 2, (2,), ("y",))


def test_family_names():
    assert family_names(2, [2]) == ["x", "y", "z", "v1", "v2", "u1_1", "u1_2"]


def test_weights_with_explicit_e():
    w = convention51_weights(3, 2, [2], e=60)
    assert w.of("x") == (-60, 1)
    assert w.of("y") == (2, 0)
    assert w.of("z") == (3, 0)
    assert w.of("v1") == (66, -1)
    assert w.of("v2") == (192, -3)
    assert all(w.constraints().values())


def test_weights_default_e_and_blocks():
    w = convention51_weights(3, 2, [2], extra_blocks=[[3]])
    assert w.e == 3 * 2 * 3
    assert w.of("u1_1") == w.of("v1")
    assert w.of("u1_2") == tuple(3 * a - b for a, b in zip(w.of("v1"), w.of("x")))
    assert all(w.constraints().values())


@pytest.mark.parametrize("k,l", [(2, 3), (4, 2), (3, 1)])
def test_weights_reject_bad_exponents(k, l):
    with pytest.raises(PreconditionError):
        convention51_weights(k, l, [2])


def test_prop_5_2_graded_system():
    fam = build_family(DEFAULT)
    R = fam.ring
    expected = Ideal(R, ["x*v1 - y^3 + z^2", "x*v2 - v1^2"])
    assert ideal_equal(fam.xhat.ideal, expected)
    assert fam.prime_certified


def test_graded_image_of_binomial():
    fam = build_family(DEFAULT)
    gp = fam.xhat
    assert str(gr_element(gp.ring.parse("y^3 - z^2"), gp)) == "x*v1"
    assert minimal_degree(gp.ring.parse("y^3 - z^2"), gp) == (6, 0)
    assert str(gr_element(gp.ring.parse("v1^2 - y"), gp)) == "x*v2"
    with pytest.raises(PreconditionError):
        minimal_representative(gp.ring.parse("x*v1 - y^3 + z^2"), gp)


def test_graded_ideal_of_plane_curve():
    R = Ring(["x", "y"])
    A = PresentedAlgebra(R, ["y^2 - x^3 - x"])
    w = WeightFunction({"x": (2,), "y": (3,)})
    gp = graded_ideal(A, w)
    assert [str(g) for g in gp.ideal.gens] == ["x^3 - y^2"]


def test_negative_weights_handled():
    R = Ring(["x", "z"])
    A = PresentedAlgebra(R, ["x*z - 1"])
    w = WeightFunction({"x": (-1,), "z": (1,)})
    gp = graded_ideal(A, w)
    assert ideal_equal(gp.ideal, Ideal(R, ["x*z - 1"]))


def test_candidates():
    fam = build_family(DEFAULT)
    labels = [c.label for c in homogeneous_irreducible_candidates(fam.xhat, 3, 2, 2)]
    assert labels == ["x", "y", "z", "v1", "v2", "y^3 + c*z^2"]


def test_weight_independence_of_graded_ideal():
    a = build_family(DEFAULT, e=18)
    b = build_family(DEFAULT, e=60)
    assert ideal_equal(a.xhat.ideal, b.xhat.ideal)
