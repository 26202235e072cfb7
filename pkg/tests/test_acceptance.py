"""Acceptance criteria, one test each; every test prints a single PASS/FAIL line."""

import contextlib
import re
import subprocess
import sys
import time
from pathlib import Path

import pytest

from affinemod import Ideal, PresentedAlgebra, Ring
from affinemod.certificate import FamilyParams, build_family, case_analysis, ml_report
from affinemod.derivation import NILPOTENT, NOT_NILPOTENT, degree, kernel_member, lnd_check
from affinemod.grading import homogeneous_irreducible_candidates
from affinemod.ideal import (
    dimension,
    gradient_generic_independence,
    ideal_equal,
    is_semiregular_sequence,
    membership,
)
from affinemod.modification import (
    ModificationLocus,
    davis_presentation,
    largest_ideal,
    modification_ideals,
)

DEFAULT = FamilyParams(3, 2, (2,), ("y",))
ROOT = Path(__file__).resolve().parent


@contextlib.contextmanager
def criterion(number, title, limit=None):
    start = time.perf_counter()
    try:
        yield
        elapsed = time.perf_counter() - start
        if limit is not None:
            assert elapsed < limit, f"took {elapsed:.2f}s, limit {limit}s"
    except BaseException as exc:
        elapsed = time.perf_counter() - start
        print(f"\nCRITERION {number:2d} FAIL {title} ({elapsed:.2f}s): {exc}")
        raise
    print(f"\nCRITERION {number:2d} PASS {title} ({elapsed:.2f}s)")


def gb_strings(ideal):
    return sorted(str(g) for g in ideal.groebner())


def candidates():
    fam = build_family(DEFAULT)
    return fam, {c.label: c for c in homogeneous_irreducible_candidates(fam.xhat, 3, 2, 2)}


def test_criterion_01_danielewski():
    with criterion(1, "Danielewski presentation, exceptional ideal, center closure", 1.0):
        R = Ring(["x", "y"])
        loc = ModificationLocus.make(R, ["x", "y^2 - y"], "x")
        pres = davis_presentation(loc)
        rel_ring = pres.ring
        assert list(pres.relations) == [rel_ring.parse("x*z - y^2 + y")]
        ideals = modification_ideals(loc, pres)
        expected = Ideal(rel_ring, ["x", "y^2 - y"])
        assert gb_strings(ideals.exceptional) == gb_strings(expected)
        assert gb_strings(ideals.geometric_center_closure) == gb_strings(Ideal(R, ["x", "y^2 - y"]))


def test_criterion_02_linear_center():
    with criterion(2, "((x,y), x) gives x*u - y, membership, dimension 3", 1.0):
        R = Ring(["x", "y", "z"])
        pres = davis_presentation(ModificationLocus.make(R, ["x", "y"], "x"))
        S = pres.ring
        assert list(pres.relations) == [S.parse("x*u - y")]
        assert membership(S.parse("y - x*u"), pres.algebra.ideal)
        assert dimension(pres.algebra.ideal) == 3


def test_criterion_03_non_basic_witness():
    with criterion(3, "x^2*z - y^2 presentation, gradients of (x^2, y^2) dependent", 1.0):
        R = Ring(["x", "y"])
        pres = davis_presentation(ModificationLocus.make(R, ["x^2", "y^2"], "x^2"))
        assert list(pres.relations) == [pres.ring.parse("x^2*z - y^2")]
        assert gradient_generic_independence([R.parse("x^2"), R.parse("y^2")], R) is False


@pytest.mark.xfail(
    strict=True,
    reason="(x^2, y^2) is semi-regular on xy = zt: its zero set is two lines, of height two",
)
def test_criterion_04_quadric_cone_not_semi_basic():
    with criterion(4, "no 2-element subsequence starting with x^2 is semi-regular", 5.0):
        R = Ring(["x", "y", "z", "t"])
        X = PresentedAlgebra(R, ["x*y - z*t"])
        gens = [R.parse(s) for s in ("x^2", "x*y", "y^2", "z")]
        assert not is_semiregular_sequence([gens[0], gens[3]], X)
        for b in gens[1:]:
            assert not is_semiregular_sequence([gens[0], b], X), f"(x^2, {b}) is semi-regular"


def test_criterion_05_largest_ideals():
    with criterion(5, "largest-ideal chains stabilise as stated", 3.0):
        R2 = Ring(["x", "y"])
        t0 = time.perf_counter()
        res = largest_ideal(ModificationLocus.make(R2, ["x"], "x^2", ["x^2", "x"]))
        assert res.stabilized_at == 2 and res.ideal.is_unit()
        assert [gb_strings(k) for k in res.chain] == [["x"], ["1"], ["1"], ["1"]]
        assert time.perf_counter() - t0 < 1.0
        R3 = Ring(["x", "y", "z"])
        t0 = time.perf_counter()
        res = largest_ideal(ModificationLocus.make(R3, ["x", "y"], "x"))
        assert res.stabilized_at == 1 and ideal_equal(res.ideal, Ideal(R3, ["x", "y"]))
        assert time.perf_counter() - t0 < 1.0
        t0 = time.perf_counter()
        res = largest_ideal(ModificationLocus.make(R2, ["x^2", "y^2"], "x^2"))
        assert res.stabilized_at == 1 and ideal_equal(res.ideal, Ideal(R2, ["x^2", "y^2"]))
        assert time.perf_counter() - t0 < 1.0


def test_criterion_06_graded_system():
    with criterion(6, "graded ideal equals (x*v1 - y^3 + z^2, x*v2 - v1^2)", 5.0):
        fam = build_family(DEFAULT)
        R = fam.ring
        assert ideal_equal(fam.xhat.ideal, Ideal(R, ["x*v1 - y^3 + z^2", "x*v2 - v1^2"]))


def test_criterion_07_case_yz():
    with criterion(7, "pair (y, z): D(x) = c*x^2, not nilpotent with witness", 10.0):
        fam, c = candidates()
        v = case_analysis(fam, (c["y"], c["z"]))
        assert v.conclusion == "excluded"
        scalar = v.evidence["scalar"]
        assert scalar is not None and scalar != "0"
        lnd = v.evidence["lnd_check"]
        assert lnd["status"] == NOT_NILPOTENT and lnd["witness"] == "x"


def test_criterion_08_case_y_v1():
    with criterion(8, "pair (y, v1): D(x) = c*x*z", 10.0):
        fam, c = candidates()
        v = case_analysis(fam, (c["y"], c["v1"]))
        assert v.conclusion == "excluded"
        assert v.evidence["expected"] == "c*x*z"
        assert v.evidence["scalar"] not in (None, "0")


def test_criterion_09_surviving_pairs():
    with criterion(9, "pairs (x, y) and (x, z) give certified LNDs", 10.0):
        fam, c = candidates()
        R = fam.ring
        for other in ("y", "z"):
            v = case_analysis(fam, (c["x"], c[other]))
            assert v.conclusion == "survives"
            assert v.evidence["lnd_check"]["status"] == NILPOTENT
            assert v.evidence["x_in_kernel"] and v.evidence[f"{other}_in_kernel"]
            assert v.evidence["degrees"]["v1"] >= 2 and v.evidence["degrees"]["v2"] >= 2


def test_criterion_10_certificate():
    with criterion(10, "certificate: machine-checked set, caveats, determinism"):
        a = ml_report(DEFAULT, e=None)
        b = ml_report(DEFAULT, e=None)
        assert a.to_json() == b.to_json()
        assert a.status == "certified-conditional"
        checked = {v.pair: v.case for v in a.verdicts if v.machine_checked}
        core = {("y", "z"): "1", ("y", "v1"): "5", ("x", "y"): "survivor", ("x", "z"): "survivor"}
        for pair, case in core.items():
            assert checked.pop(pair) == case
        assert checked and all(case == "2" for case in checked.values())
        assert a.caveats


def test_criterion_11_property_suites():
    suites = [
        "tests/test_ideal.py::test_s_polynomials_reduce_to_zero",
        "tests/test_ideal.py::test_normal_form_idempotent",
        "tests/test_poly.py::test_principal_component_multiplicative",
        "tests/test_properties.py",
    ]
    with criterion(11, "property suites, 200 seeded cases each, under 5 minutes", 300.0):
        res = subprocess.run(
            [sys.executable, "-m", "pytest", "-q", "-p", "no:cacheprovider", *suites],
            cwd=ROOT.parent,
            capture_output=True,
            text=True,
        )
        assert res.returncode == 0, res.stdout[-2000:]
        assert re.search(r"\b10 passed", res.stdout), res.stdout[-500:]


def test_criterion_12_weight_independence():
    with criterion(12, "two admissible e values give equal graded ideals", 10.0):
        a = build_family(DEFAULT, e=18)
        b = build_family(DEFAULT, e=60)
        assert a.weights.of("v2") != b.weights.of("v2")
        assert ideal_equal(a.xhat.ideal, b.xhat.ideal)
        assert ideal_equal(a.graded_full.ideal, b.graded_full.ideal)
