"""Affine modifications ``A[I/f]`` of presented algebras.

A modification is described by a :class:`ModificationLocus` (the ideal ``I``
of the base algebra, the modulus ``f`` and a generating sequence ``f = b0,
b1, ..., bs`` of ``I``).  Its Davis presentation adjoins one variable ``y_i``
per ``b_i`` (i >= 1) subject to ``f*y_i - b_i``.
"""

import dataclasses
import itertools

from .config import get_config
from .errors import InvariantError, PreconditionError
from .ideal import (
    Ideal,
    PresentedAlgebra,
    colon_ideal,
    eliminate,
    gradient_generic_independence,
    ideal_equal,
    is_regular_sequence,
    is_semiregular_sequence,
    is_unit_ideal,
    lift,
    membership,
)
from .poly import Ring, divide_exact, squarefree_part

CERTIFIED = "regular-sequence-certified"
UNVERIFIED = "unverified"


def _gens_text(ideal):
    return [str(g) for g in ideal.gens]


@dataclasses.dataclass(frozen=True)
class ModificationLocus:
    base: PresentedAlgebra
    ideal: Ideal
    f: object
    gens: tuple

    @classmethod
    def make(cls, base, ideal_gens, f, gens=None):
        """Validated locus; ``gens`` defaults to ``f`` followed by the ideal's generators."""
        if isinstance(base, Ring):
            base = PresentedAlgebra(base)
        ring = base.ring
        f = ring.coerce(f)
        if f.is_zero():
            raise PreconditionError("the modulus f must be nonzero")
        ideal = ideal_gens if isinstance(ideal_gens, Ideal) else Ideal(ring, ideal_gens)
        full = base.ideal_of(ideal.gens)
        if not membership(f, full):
            raise PreconditionError(
                f"f = {f} is not in I = {ideal}; normalise the locus so that f lies in I"
            )
        if gens is None:
            gens = [f] + [g for g in ideal.gens if g != f]
        gens = tuple(ring.coerce(g) for g in gens)
        if not gens or gens[0] != f:
            raise PreconditionError("the generating sequence must start with f")
        for b in gens:
            if not membership(b, full):
                raise PreconditionError(f"sequence element {b} is not in I")
        # the sequence must generate I (modulo the base relations)
        seq_ideal = base.ideal_of(gens)
        for g in ideal.gens:
            if not membership(g, seq_ideal):
                raise PreconditionError(f"sequence does not generate I: {g} is missing")
        return cls(base, ideal, f, gens)

    @property
    def ring(self):
        return self.base.ring

    def to_json(self):
        return {
            "base": repr(self.base),
            "ideal": _gens_text(self.ideal),
            "f": str(self.f),
            "sequence": [str(b) for b in self.gens],
        }


@dataclasses.dataclass(frozen=True)
class DavisPresentation:
    locus: ModificationLocus
    algebra: PresentedAlgebra
    new_vars: tuple
    relations: tuple
    status: str
    warnings: tuple = ()

    @property
    def ring(self):
        return self.algebra.ring

    @property
    def certified(self):
        return self.status == CERTIFIED

    def images(self):
        """Mapping new variable -> (numerator, denominator) it stands for."""
        return {v: (b, self.locus.f) for v, b in zip(self.new_vars, self.locus.gens[1:])}

    def to_json(self):
        return {
            "ring": list(self.ring.names),
            "new_variables": list(self.new_vars),
            "relations": [str(r) for r in self.relations],
            "base_relations": [str(r) for r in self.locus.base.relations],
            "status": self.status,
            "warnings": list(self.warnings),
        }


def davis_presentation(loc, names=None):
    """Presentation ``base[y_1..y_s] / (base relations, f*y_i - b_i)``."""
    base = loc.base
    tail = loc.gens[1:]
    if names is None:
        names = base.ring.fresh_names(len(tail))
    names = tuple(names)
    if len(names) != len(tail):
        raise PreconditionError(f"need {len(tail)} new variable names, got {len(names)}")
    ring = base.ring.extend(*names)
    f = loc.f.to_ring(ring)
    rels = tuple(f * ring.gen(n) - b.to_ring(ring) for n, b in zip(names, tail))
    base_rels = [r.to_ring(ring) for r in base.relations]
    warnings = ()
    if is_regular_sequence(loc.gens, base):
        status = CERTIFIED
    else:
        status = UNVERIFIED
        warnings = ("sequence is not regular; the presentation may differ from A[I/f]",)
    algebra = PresentedAlgebra(ring, base_rels + list(rels), check=False)
    return DavisPresentation(loc, algebra, names, rels, status, warnings)


@dataclasses.dataclass(frozen=True)
class ModificationIdeals:
    exceptional: Ideal
    divisor: Ideal
    center: Ideal
    geometric_center_closure: Ideal

    def to_json(self):
        return {k: _gens_text(getattr(self, k)) for k in self.__dataclass_fields__}


def _reduced(ideal):
    return Ideal(ideal.ring, ideal.groebner())


def modification_ideals(loc, pres, f_power=None):
    """Exceptional divisor, divisor, center and closure of the geometric center.

    ``f_power = (g, n)`` declares ``f = g**n`` so that ``g`` is used as the
    reduced equation; otherwise the squarefree part of ``f`` is used.
    """
    if f_power is not None:
        g, n = f_power
        g = loc.ring.coerce(g)
        if g**n != loc.f:
            raise PreconditionError(f"f_power: ({g})^{n} != {loc.f}")
        red = g
    else:
        red = squarefree_part(loc.f)
    ring = pres.ring
    exceptional = _reduced(Ideal(ring, [red.to_ring(ring)] + list(pres.algebra.relations)))
    divisor = _reduced(loc.base.ideal_of([red]))
    center = _reduced(loc.base.ideal_of(loc.ideal.gens))
    closure = _reduced(eliminate(exceptional, pres.new_vars))
    return ModificationIdeals(exceptional, divisor, center, closure)


@dataclasses.dataclass(frozen=True)
class LargestIdeal:
    ideal: Ideal
    stabilized_at: object  # int, or None when the cap was reached
    chain: tuple

    @property
    def cap_reached(self):
        return self.stabilized_at is None

    def to_json(self):
        return {
            "ideal": _gens_text(self.ideal),
            "stabilized_at": self.stabilized_at,
            "cap_reached": self.cap_reached,
            "chain": [_gens_text(k) for k in self.chain],
        }


def largest_ideal(loc, cap=None):
    """The f-largest ideal through the chain ``K_m = I^m : f^(m-1)``.

    Stabilisation is declared at the first ``m`` with ``K_m = K_{m+1} = K_{m+2}``.
    When ``m + 2`` would exceed ``cap`` the last term is returned as a lower
    bound with ``stabilized_at=None``.
    """
    cap = cap if cap is not None else get_config().chain_cap
    base = loc.base
    ring = base.ring
    rel = list(base.relations)
    power = Ideal(ring, loc.ideal.gens)
    chain = []

    def term(m):
        if m == 1:
            return _reduced(Ideal(ring, list(power.gens) + rel))
        return _reduced(colon_ideal(Ideal(ring, list(power.gens) + rel), loc.f ** (m - 1)))

    for m in range(1, cap + 1):
        if m > 1:
            power = Ideal(ring, _dedupe(power * loc.ideal))
        k = term(m)
        if chain and not all(membership(g, k) for g in chain[-1].gens):
            raise InvariantError("largest-ideal chain is not ascending")
        chain.append(k)
        if len(chain) >= 3 and ideal_equal(chain[-3], chain[-2]) and ideal_equal(chain[-2], k):
            return LargestIdeal(chain[-3], m - 2, tuple(chain))
    return LargestIdeal(chain[-1], None, tuple(chain))


def _dedupe(ideal):
    # keep generator lists small when forming powers
    basis = ideal.groebner()
    return list(basis)


@dataclasses.dataclass(frozen=True)
class SplitResult:
    first: DavisPresentation
    second: DavisPresentation
    direct: DavisPresentation
    substitution: dict
    verified: bool

    def to_json(self):
        return {
            "first": self.first.to_json(),
            "second": self.second.to_json(),
            "direct": self.direct.to_json(),
            "substitution": {k: str(v) for k, v in self.substitution.items()},
            "verified": self.verified,
        }


def compose_split(loc, f1, f2):
    """Split ``A[I/(f1*f2)]`` as ``A1[I2/f2]`` with ``A1 = A[I1/f1]``.

    ``I1`` is generated by ``f1`` and ``b_1..b_s``; over ``A1`` the second
    locus is ``(f2, w_1..w_s)`` where ``w_i = b_i/f1``.  The composed
    presentation is compared with the direct one by mutual membership.
    """
    ring = loc.ring
    f1, f2 = ring.coerce(f1), ring.coerce(f2)
    if f1 * f2 != loc.f:
        raise PreconditionError(f"({f1})*({f2}) != f = {loc.f}")
    tail = loc.gens[1:]
    first_loc = ModificationLocus.make(loc.base, [f1] + list(tail), f1, [f1] + list(tail))
    first = davis_presentation(first_loc)
    r1 = first.ring
    ws = [r1.gen(n) for n in first.new_vars]
    g2 = f2.to_ring(r1)
    second_loc = ModificationLocus.make(first.algebra, [g2] + ws, g2, [g2] + ws)
    second = davis_presentation(second_loc)
    direct = davis_presentation(loc, names=second.new_vars)

    r2 = second.ring
    subst = {w: f2.to_ring(direct.ring) * direct.ring.gen(y) for w, y in zip(first.new_vars, second.new_vars)}
    composed = second.algebra.ideal
    ok = True
    for rel in direct.algebra.relations:
        ok = ok and membership(rel.to_ring(r2), composed)
    for rel in composed.gens:
        image = rel.subs(subst, direct.ring)
        ok = ok and membership(image, direct.algebra.ideal)
    for w, y in zip(first.new_vars, second.new_vars):
        ok = ok and membership(r2.gen(w) - f2.to_ring(r2) * r2.gen(y), composed)
    if not ok:
        raise InvariantError("composed and direct presentations disagree")
    return SplitResult(first, second, direct, subst, ok)


@dataclasses.dataclass(frozen=True)
class FiberProduct:
    algebra: PresentedAlgebra
    blocks: tuple  # DavisPresentation per locus

    @property
    def ring(self):
        return self.algebra.ring

    @property
    def status(self):
        return CERTIFIED if all(b.certified for b in self.blocks) else UNVERIFIED

    def to_json(self):
        return {
            "ring": list(self.ring.names),
            "relations": [str(r) for r in self.algebra.relations],
            "status": self.status,
        }


def fiber_product_presentation(locs):
    """Concatenate the Davis blocks of loci whose moduli have no common zeros."""
    locs = list(locs)
    if not locs:
        raise PreconditionError("no loci given")
    base = locs[0].base
    for loc in locs[1:]:
        if loc.base.ring != base.ring:
            raise PreconditionError("all loci must share the base algebra")
    for (i, a), (j, b) in itertools.combinations(enumerate(locs), 2):
        if not is_unit_ideal(base.ideal_of([a.f, b.f])):
            raise PreconditionError(
                f"moduli of loci {i} and {j} ({a.f}, {b.f}) have common zeros"
            )
    used = base.ring
    blocks = []
    for loc in locs:
        names = used.fresh_names(len(loc.gens) - 1)
        block = davis_presentation(loc, names=names)
        blocks.append(block)
        used = used.extend(*names)
    rels = [r.to_ring(used) for r in base.relations]
    for block in blocks:
        rels.extend(r.to_ring(used) for r in block.relations)
    return FiberProduct(PresentedAlgebra(used, rels, check=False), tuple(blocks))


@dataclasses.dataclass(frozen=True)
class BasicStep:
    next: DavisPresentation
    transferred: object  # ModificationLocus over next.algebra, or None

    def to_json(self):
        out = {"next": self.next.to_json()}
        out["transferred"] = self.transferred.to_json() if self.transferred else None
        return out


def basic_step(current, g, center_gens, outer=None, names=None):
    """One basic modification with center ``center_gens`` (starting with ``g``).

    With ``outer`` (a locus whose modulus is ``g**n``) the remaining
    modification is transferred to the new algebra: its modulus becomes
    ``g**(n-1)`` and its generators ``g**(n-1), b_1/g, ..., b_s/g``.
    """
    if isinstance(current, Ring):
        current = PresentedAlgebra(current)
    ring = current.ring
    g = ring.coerce(g)
    center = [ring.coerce(c) for c in center_gens]
    if not center or center[0] != g:
        raise PreconditionError("the center sequence must start with g")
    if not is_semiregular_sequence(center, current):
        raise PreconditionError("basic step: center sequence is not semi-regular")
    if not gradient_generic_independence(center, current):
        raise PreconditionError(
            "basic step: gradients of the center sequence are dependent on a component"
        )
    loc = ModificationLocus.make(current, center, g, center)
    nxt = davis_presentation(loc, names=names)
    transferred = None
    if outer is not None:
        transferred = _transfer(outer, g, center, current, nxt)
    return BasicStep(nxt, transferred)


def _transfer(outer, g, center, current, nxt):
    n = 0
    h = outer.f
    while not h.is_constant():
        try:
            h = divide_exact(h, g)
        except PreconditionError:
            raise PreconditionError(f"outer modulus {outer.f} is not a power of {g}") from None
        n += 1
    if h != 1:
        raise PreconditionError(f"outer modulus {outer.f} is not a power of {g}")
    if n < 2:
        raise PreconditionError("outer modulus must be g^n with n >= 2")
    ring = current.ring
    big = nxt.ring
    relations = list(current.relations)
    center_ideal = Ideal(ring, center + relations)
    images = []
    for b in outer.gens[1:]:
        cof = lift(b, center_ideal)
        if cof is None:
            raise PreconditionError(f"outer generator {b} is not in the center ideal")
        value = cof[0].to_ring(big)
        for c, y in zip(cof[1 : len(center)], nxt.new_vars):
            value = value + c.to_ring(big) * big.gen(y)
        images.append(nxt.algebra.reduce(value))
    mod = (g ** (n - 1)).to_ring(big)
    gens = [mod] + images
    return ModificationLocus.make(nxt.algebra, gens, mod, gens)


@dataclasses.dataclass
class ModificationChain:
    """Steps ``A_0 -> A_1 -> ...``, each a Davis presentation."""

    steps: list = dataclasses.field(default_factory=list)

    def append(self, pres):
        if self.steps and self.steps[-1].algebra.ring != pres.locus.base.ring:
            raise PreconditionError("chain step does not start where the previous one ended")
        self.steps.append(pres)

    @property
    def result(self):
        return self.steps[-1].algebra if self.steps else None

    def to_json(self):
        return {
            "steps": [
                {"locus": s.locus.to_json(), "presentation": s.to_json()} for s in self.steps
            ],
            "certified": all(s.certified for s in self.steps),
        }
