"""The threefold family, its graded algebra and the kernel certificate.

The family lives in ``Q[x, y, z, v1..vm, u{j}_{i}...]`` with relations

    x*v1 - (y^k - z^l)
    x*v(i+1) - vi^(n_i) + q_i(y, z, v1..vi)
    (x - c_j)*u{j}_1 - r_{j,0}(y, z)
    (x - c_j)*u{j}_(i+1) - u{j}_i^(n_{j,i}) + r_{j,i}(y, z, u{j}_1..u{j}_i)

The certificate enumerates pairs of homogeneous irreducible elements of the
graded algebra, rules out every pair except ``(x, y)`` and ``(x, z)`` (by
computation where that is possible, by citation otherwise) and checks that
``x`` is killed by the surviving derivations.
"""

import dataclasses
import itertools
from fractions import Fraction
from math import gcd

from .derivation import (
    NILPOTENT,
    NOT_NILPOTENT,
    Derivation,
    degree,
    jacobian_derivation,
    kernel_member,
    lnd_check,
)
from .errors import InvariantError, PreconditionError
from .grading import (
    convention51_weights,
    family_names,
    graded_ideal,
    homogeneous_irreducible_candidates,
)
from .ideal import Ideal, PresentedAlgebra, ideal_equal, is_regular_sequence
from .poly import Ring

CAVEATS = (
    "Reduction to perfect derivations (every locally nilpotent derivation of the "
    "algebra has an equivalent perfect one when the graded ideal is prime) is cited, not computed.",
    "Equivalence of a locally nilpotent derivation with the Jacobian derivation of two "
    "independent kernel elements is cited, not computed.",
    "The closure property 'a^k + b^l in the kernel implies a, b in the kernel' used for "
    "the binomial pairs is cited; only the collapse to the (y, z) derivation is computed.",
    "Pairs (v_i, v_j), (x, v_i), (y, v_i) for i > 1 and (z, v_i) are excluded by "
    "geometric fiber arguments (hyperbolic or singular generic fibers) that are cited.",
    "The descent from the graded algebra back to the original algebra (every derivation "
    "kills x) is a proof about all derivations and is cited.",
    "Primality of the graded ideal is certified only through the regular-sequence criterion.",
)


@dataclasses.dataclass(frozen=True)
class Block:
    """An extra root block at ``x = c``."""

    c: Fraction
    n: tuple
    r: tuple = ()


@dataclasses.dataclass(frozen=True)
class FamilyParams:
    k: int
    l: int
    n: tuple
    q: tuple = ()
    blocks: tuple = ()

    @property
    def m(self):
        return len(self.n) + 1

    def to_json(self):
        return {
            "k": self.k,
            "l": self.l,
            "n": list(self.n),
            "q": [str(t) for t in self.q],
            "blocks": [
                {"c": str(b.c), "n": list(b.n), "r": [str(t) for t in b.r]} for b in self.blocks
            ],
        }


def _validate(params):
    k, l = params.k, params.l
    if k <= l or l < 2:
        raise PreconditionError(f"need k > l >= 2, got k={k}, l={l}")
    if gcd(k, l) != 1:
        raise PreconditionError(f"k={k} and l={l} are not coprime")
    if params.m < 2:
        raise PreconditionError("the family needs m >= 2 (at least one exponent n_1)")
    if any(int(x) < 1 for x in params.n):
        raise PreconditionError("exponents must be positive")
    roots = [Fraction(b.c) for b in params.blocks]
    if any(c == 0 for c in roots) or len(set(roots)) != len(roots):
        raise PreconditionError("extra block roots must be nonzero and distinct")


@dataclasses.dataclass(frozen=True)
class Family:
    params: FamilyParams
    xprime: PresentedAlgebra
    weights: object
    xhat: object  # GradedPresentation of the x-root block
    graded_full: object  # GradedPresentation of the whole system
    relations: tuple  # P_1..P_m of the graded system
    prime_certified: bool

    @property
    def ring(self):
        return self.xhat.ring


def _tail(ring, text, allowed, bounds):
    p = ring.coerce(text) if text is not None else ring.zero()
    extra = p.variables() - set(allowed)
    if extra:
        raise PreconditionError(f"tail {p} uses variables {sorted(extra)} outside {allowed}")
    for name, bound in bounds.items():
        if p.degree_in(name) >= bound:
            raise PreconditionError(f"tail {p} has degree >= {bound} in {name}")
    return p


def family_relations(params, ring):
    """Relations of the full system, in order."""
    k, l, m = params.k, params.l, params.m
    g = ring.gen
    x = g("x")
    rels = [x * g("v1") - (g("y") ** k - g("z") ** l)]
    qs = list(params.q) + [None] * (m - 1 - len(params.q))
    if len(qs) > m - 1:
        raise PreconditionError(f"{len(params.q)} tails given for m - 1 = {m - 1} equations")
    for i in range(1, m):
        allowed = ["y", "z"] + [f"v{j}" for j in range(1, i + 1)]
        bounds = {f"v{j}": params.n[j - 1] for j in range(1, i + 1)}
        tail = _tail(ring, qs[i - 1], allowed, bounds)
        rels.append(x * g(f"v{i + 1}") - g(f"v{i}") ** params.n[i - 1] + tail)
    for j, block in enumerate(params.blocks, start=1):
        size = len(block.n) + 1
        rs = list(block.r) + [None] * (size - len(block.r))
        if len(rs) > size:
            raise PreconditionError(f"block {j}: too many tails")
        lin = x - Fraction(block.c)
        if rs[0] is None:
            r0 = g("y") ** k - g("z") ** l
        else:
            r0 = _tail(ring, rs[0], ["y", "z"], {})
        rels.append(lin * g(f"u{j}_1") - r0)
        for i in range(1, size):
            allowed = ["y", "z"] + [f"u{j}_{s}" for s in range(1, i + 1)]
            bounds = {f"u{j}_{s}": block.n[s - 1] for s in range(1, i + 1)}
            tail = _tail(ring, rs[i], allowed, bounds)
            rels.append(
                lin * g(f"u{j}_{i + 1}") - g(f"u{j}_{i}") ** block.n[i - 1] + tail
            )
    return rels


def build_family(params, e=None):
    _validate(params)
    m = params.m
    sizes = [len(b.n) + 1 for b in params.blocks]
    ring = Ring(family_names(m, sizes))
    rels = family_relations(params, ring)
    bound = max(
        [params.k, *params.n, *(x for b in params.blocks for x in b.n)]
        + [r.total_degree() for r in rels]
    )
    weights = convention51_weights(
        params.k, params.l, params.n, [b.n for b in params.blocks], e=e, degree_bound=bound
    )
    xprime = PresentedAlgebra(ring, rels)

    small = Ring(family_names(m))
    root_rels = [r.to_ring(small) for r in rels[:m]]
    root = PresentedAlgebra(small, root_rels)
    xhat = graded_ideal(root, weights.restrict(small.names))
    g = small.gen
    P = [g("x") * g("v1") - g("y") ** params.k + g("z") ** params.l]
    P += [g("x") * g(f"v{i + 1}") - g(f"v{i}") ** params.n[i - 1] for i in range(1, m)]
    if not ideal_equal(xhat.ideal, Ideal(small, P)):
        raise InvariantError(
            f"graded ideal {xhat.ideal} differs from the expected system {[str(p) for p in P]}"
        )

    full = graded_ideal(xprime, weights)
    expected = [p.to_ring(ring) for p in P] + [ring.gen(n) for n in ring.names if n.startswith("u")]
    if not ideal_equal(full.ideal, Ideal(ring, expected)):
        raise InvariantError(f"graded ideal of the full system is {full.ideal}")
    prime = is_regular_sequence(P, PresentedAlgebra(small))
    return Family(params, xprime, weights, xhat, full, tuple(P), prime)


# -- case analysis ----------------------------------------------------------------


@dataclasses.dataclass(frozen=True)
class CaseVerdict:
    pair: tuple
    case: str
    machine_checked: bool
    evidence: dict
    conclusion: str  # "excluded", "survives" or "failed"

    def to_json(self):
        return {
            "pair": list(self.pair),
            "case": self.case,
            "machine_checked": self.machine_checked,
            "conclusion": self.conclusion,
            "evidence": self.evidence,
        }


def _scalar_multiple(alg, value, target):
    """``c`` with ``value == c*target`` in the algebra, else ``None``."""
    v = alg.reduce(value)
    t = alg.reduce(target)
    if not t or not v:
        return None
    (e, c_t) = next(iter(sorted(t.items())))
    c = v.coefficient(e) / c_t
    if c and v == t * c:
        return c
    return None


def _graded_algebra(fam):
    return PresentedAlgebra(fam.ring, fam.relations, check=False)


def pair_derivation(fam, a1, a2):
    return jacobian_derivation(_graded_algebra(fam), fam.relations, a1, a2)


def algebraically_independent(fam, a1, a2):
    """Jacobian test: the pair is independent iff its Jacobian derivation is nonzero."""
    alg = _graded_algebra(fam)
    ring = alg.ring
    extra = set()
    for a in (a1, a2):
        extra |= set(a.ring.names) - set(ring.names)
    if extra:
        ring = ring.extend(*sorted(extra))
        alg = PresentedAlgebra(ring, [p.to_ring(ring) for p in fam.relations], check=False)
    names = list(fam.ring.names)
    D = jacobian_derivation(
        alg, [p.to_ring(ring) for p in fam.relations], a1.to_ring(ring), a2.to_ring(ring), names
    )
    return any(D.images[n] for n in names)


def _monomial(ring, **exps):
    return ring.monomial([exps.get(n, 0) for n in ring.names])


def _case1(fam):
    ring, m = fam.ring, fam.params.m
    D = pair_derivation(fam, ring.gen("y"), ring.gen("z"))
    target = _monomial(ring, x=m)
    c = _scalar_multiple(D.algebra, D.images["x"], target)
    verdict = lnd_check(D)
    ok = c is not None and verdict.status == NOT_NILPOTENT
    evidence = {
        "D(x)": str(D.images["x"]),
        "expected": f"c*{target}",
        "scalar": str(c) if c is not None else None,
        "lnd_check": verdict.to_json(),
    }
    return ok, evidence


def _case5(fam):
    ring, m, l = fam.ring, fam.params.m, fam.params.l
    D = pair_derivation(fam, ring.gen("y"), ring.gen("v1"))
    target = _monomial(ring, x=m - 1, z=l - 1)
    c = _scalar_multiple(D.algebra, D.images["x"], target)
    verdict = lnd_check(D)
    ok = c is not None and verdict.status == NOT_NILPOTENT
    evidence = {
        "D(x)": str(D.images["x"]),
        "expected": f"c*{target}",
        "scalar": str(c) if c is not None else None,
        "lnd_check": verdict.to_json(),
    }
    return ok, evidence


def _survivor(fam, other):
    ring, m = fam.ring, fam.params.m
    D = pair_derivation(fam, ring.gen("x"), ring.gen(other))
    verdict = lnd_check(D)
    evidence = {"derivation": D.to_json(), "lnd_check": verdict.to_json()}
    ok = verdict.status == NILPOTENT
    kx = kernel_member(D, ring.gen("x"))
    ko = kernel_member(D, ring.gen(other))
    evidence["x_in_kernel"] = kx
    evidence[f"{other}_in_kernel"] = ko
    degs = {}
    if ok:
        for i in range(1, m + 1):
            degs[f"v{i}"] = degree(D, ring.gen(f"v{i}")).degree
    evidence["degrees"] = degs
    ok = ok and kx and ko and all(d >= 2 for d in degs.values()) and len(degs) == m
    return ok, evidence


def _case2(fam, binomial):
    """Binomial pairs collapse onto the (y, z) derivation, which is excluded."""
    ring = fam.ring
    param = [n for n in binomial.ring.names if n not in ring][0]
    ext = binomial.ring
    alg = PresentedAlgebra(ext, [p.to_ring(ext) for p in fam.relations], check=False)
    Dyz = jacobian_derivation(
        alg,
        [p.to_ring(ext) for p in fam.relations],
        ext.gen("y"),
        ext.gen("z"),
        list(ring.names),
    )
    formal = kernel_member(Dyz, binomial)
    spots = {}
    D0 = pair_derivation(fam, ring.gen("y"), ring.gen("z"))
    for value in (1, -1):
        special = binomial.subs({param: value}, ring)
        spots[str(value)] = kernel_member(D0, special)
    case1_ok, case1 = _case1(fam)
    ok = formal and all(spots.values()) and case1_ok
    evidence = {
        "binomial": str(binomial),
        "yz_derivation_kills_binomial": formal,
        "spot_checks": spots,
        "yz_derivation_excluded": case1_ok,
        "yz_D(x)": case1["D(x)"],
    }
    return ok, evidence


def _index(label):
    return int(label[1:])


def case_analysis(fam, pair):
    """Verdict for an unordered pair of candidates (see ``homogeneous_irreducible_candidates``)."""
    a, b = pair
    labels = (a.label, b.label)
    kinds = {a.kind, b.kind}
    if "binomial" in kinds:
        binom = a if a.kind == "binomial" else b
        ok, ev = _case2(fam, binom.poly)
        return CaseVerdict(labels, "2", True, ev, "excluded" if ok else "failed")
    if kinds == {"y", "z"}:
        ok, ev = _case1(fam)
        return CaseVerdict(labels, "1", True, ev, "excluded" if ok else "failed")
    if kinds == {"x", "y"} or kinds == {"x", "z"}:
        other = b.label if a.kind == "x" else a.label
        ok, ev = _survivor(fam, other)
        return CaseVerdict(labels, "survivor", True, ev, "survives" if ok else "failed")
    if kinds == {"v"}:
        return CaseVerdict(labels, "3", False, {"citation": "two v-coordinates: hyperbolic generic fibers"}, "excluded")
    if kinds == {"x", "v"}:
        return CaseVerdict(labels, "4", False, {"citation": "x and a v-coordinate: hyperbolic generic fibers"}, "excluded")
    if kinds == {"y", "v"}:
        v = a if a.kind == "v" else b
        if _index(v.label) == 1:
            ok, ev = _case5(fam)
            return CaseVerdict(labels, "5", True, ev, "excluded" if ok else "failed")
        return CaseVerdict(labels, "5", False, {"citation": "y and v_i, i > 1: fiber components non-contractible or singular"}, "excluded")
    if kinds == {"z", "v"}:
        return CaseVerdict(labels, "6", False, {"citation": "z and v_i: same fiber argument as for y and v_i"}, "excluded")
    raise PreconditionError(f"unsupported candidate pair {labels}")


@dataclasses.dataclass(frozen=True)
class MLReport:
    family: FamilyParams
    weights: dict
    graded_ideal: tuple
    prime_certified: bool
    verdicts: tuple
    kernel_element: str
    survivors: tuple
    machine_checked: tuple
    caveats: tuple
    status: str

    def to_json(self):
        return {
            "family": self.family.to_json(),
            "weights": self.weights,
            "graded_ideal": list(self.graded_ideal),
            "prime_certified": self.prime_certified,
            "verdicts": [v.to_json() for v in self.verdicts],
            "kernel_element": self.kernel_element,
            "survivors": [list(p) for p in self.survivors],
            "machine_checked": [list(p) for p in self.machine_checked],
            "caveats": list(self.caveats),
            "status": self.status,
        }


def ml_report(params, e=None):
    fam = build_family(params, e=e)
    cands = homogeneous_irreducible_candidates(fam.xhat, params.k, params.l, params.m)
    verdicts = []
    for a, b in itertools.combinations(cands, 2):
        if not algebraically_independent(fam, a.poly, b.poly):
            continue
        verdicts.append(case_analysis(fam, (a, b)))
    survivors = tuple(v.pair for v in verdicts if v.conclusion == "survives")
    failed = [v for v in verdicts if v.conclusion == "failed"]
    status = "certified-conditional"
    if failed or sorted(survivors) != [("x", "y"), ("x", "z")]:
        status = "FAILED"
    for v in verdicts:
        if v.conclusion == "survives" and not v.evidence.get("x_in_kernel"):
            status = "FAILED"
    caveats = list(CAVEATS)
    if not fam.prime_certified:
        caveats.append("graded ideal primality is unverified")
    return MLReport(
        params,
        fam.weights.report(),
        tuple(str(p) for p in fam.relations),
        fam.prime_certified,
        tuple(verdicts),
        "x",
        survivors,
        tuple(v.pair for v in verdicts if v.machine_checked),
        tuple(caveats),
        status,
    )
