import pytest

from affinemod.certificate import (
    Block,
    FamilyParams,
    algebraically_independent,
    build_family,
    case_analysis,
    ml_report,
)
from affinemod.errors import PreconditionError
from affinemod.grading import homogeneous_irreducible_candidates
from affinemod.ideal import Ideal, eliminate

DEFAULT = FamilyParams(3, 2, (2,), ("y",))


@pytest.fixture(scope="module")
def fam():
    return build_family(DEFAULT)


def candidates(fam):
    return {c.label: c for c in homogeneous_irreducible_candidates(fam.xhat, 3, 2, 2)}


@pytest.mark.parametrize(
    "params",
    [
        FamilyParams(2, 3, (2,)),
        FamilyParams(4, 2, (2,)),
        FamilyParams(3, 2, ()),
        FamilyParams(3, 2, (2,), blocks=(Block(0, (2,)),)),
        FamilyParams(3, 2, (2,), ("v1^2",)),
    ],
)
def test_invalid_families(params):
    with pytest.raises(PreconditionError):
        build_family(params)


def test_family_with_extra_block():
    fam = build_family(FamilyParams(3, 2, (2,), ("y",), (Block(1, (2,)),)))
    assert fam.xprime.ring.names[-2:] == ("u1_1", "u1_2")
    assert fam.ring.names == ("x", "y", "z", "v1", "v2")
    assert fam.prime_certified


def test_independence_against_elimination(fam):
    # Jacobian test versus an elimination oracle on the graded system
    R = fam.ring
    cands = candidates(fam)
    big = R.extend("a", "b")
    for p, q in [("y", "z"), ("x", "v1"), ("v1", "v2"), ("y", "x")]:
        gens = [g.to_ring(big) for g in fam.relations]
        gens += [big.gen("a") - big.gen(p), big.gen("b") - big.gen(q)]
        el = eliminate(Ideal(big, gens), list(R.names))
        assert algebraically_independent(fam, cands[p].poly, cands[q].poly) == (not el.gens)


def test_case_1(fam):
    c = candidates(fam)
    v = case_analysis(fam, (c["y"], c["z"]))
    assert v.case == "1" and v.conclusion == "excluded"
    assert v.evidence["D(x)"] == "x^2"
    assert v.evidence["lnd_check"]["status"] == "not_nilpotent"


def test_case_5(fam):
    c = candidates(fam)
    v = case_analysis(fam, (c["y"], c["v1"]))
    assert v.evidence["D(x)"] == "-2*x*z" and v.evidence["scalar"] == "-2"


def test_survivors(fam):
    c = candidates(fam)
    vy = case_analysis(fam, (c["x"], c["y"]))
    vz = case_analysis(fam, (c["x"], c["z"]))
    assert vy.conclusion == vz.conclusion == "survives"
    assert vy.evidence["degrees"] == {"v1": 2, "v2": 4}
    assert vz.evidence["degrees"] == {"v1": 3, "v2": 6}


def test_binomial_pairs(fam):
    c = candidates(fam)
    v = case_analysis(fam, (c["x"], c["y^3 + c*z^2"]))
    assert v.case == "2" and v.machine_checked
    assert v.evidence["yz_derivation_kills_binomial"]


def test_cited_cases_are_not_machine_checked(fam):
    c = candidates(fam)
    for pair in [("v1", "v2"), ("x", "v1"), ("y", "v2"), ("z", "v1")]:
        v = case_analysis(fam, (c[pair[0]], c[pair[1]]))
        assert not v.machine_checked and v.evidence["citation"]


def test_ml_report_is_deterministic():
    a = ml_report(DEFAULT).to_json()
    b = ml_report(DEFAULT).to_json()
    assert a == b
    assert a["status"] == "certified-conditional"
    assert a["survivors"] == [["x", "y"], ["x", "z"]]


def test_ml_report_for_larger_family():
    rep = ml_report(FamilyParams(5, 2, (2, 3), ("y", "z*v2")))
    assert rep.status == "certified-conditional"
