"""Derivations of presented algebras and local-nilpotency verdicts."""

import dataclasses
from fractions import Fraction
from math import factorial

from .config import get_config
from .errors import PreconditionError, ResourceCapError
from .ideal import Ideal, PresentedAlgebra, membership, normal_form
from .poly import Ring, jacobian_determinant, partial_derivative

NILPOTENT = "nilpotent_certified"
NOT_NILPOTENT = "not_nilpotent"
INCONCLUSIVE = "inconclusive"


class Derivation:
    """A derivation given by the images of the ring variables.

    Construction checks that every defining relation is sent into the
    defining ideal, so the derivation descends to the quotient.
    """

    def __init__(self, algebra, images, check=True):
        if isinstance(algebra, Ring):
            algebra = PresentedAlgebra(algebra)
        ring = algebra.ring
        table = {}
        for name, value in dict(images).items():
            ring.index(name)
            table[name] = ring.coerce(value)
        self.algebra = algebra
        self.images = {n: table.get(n, ring.zero()) for n in ring.names}
        if check:
            for rel in algebra.relations:
                image = self.apply_raw(rel)
                if not algebra.is_zero(image):
                    raise PreconditionError(
                        f"derivation is not well defined: relation {rel} maps to {image}"
                    )

    @property
    def ring(self):
        return self.algebra.ring

    def apply_raw(self, a):
        """Leibniz extension without reduction."""
        a = self.ring.coerce(a)
        out = self.ring.zero()
        for name in sorted(a.variables(), key=self.ring.index):
            img = self.images[name]
            if img:
                out = out + img * partial_derivative(a, name)
        return out

    def __call__(self, a):
        return derive(self, a)

    def to_json(self):
        return {n: str(v) for n, v in self.images.items()}

    def __repr__(self):
        inner = ", ".join(f"{n} -> {v}" for n, v in self.images.items())
        return f"Derivation({inner})"


def derive(D, a):
    return D.algebra.reduce(D.apply_raw(a))


def _chain(D, a, bound):
    """``[a, D(a), D^2(a), ...]`` up to the first zero, or ``None`` past ``bound``."""
    cur = D.algebra.reduce(a)
    chain = []
    while cur:
        chain.append(cur)
        if len(chain) > bound:
            return None
        cur = derive(D, cur)
    return chain


@dataclasses.dataclass(frozen=True)
class NilpotencyVerdict:
    status: str
    degrees: dict = dataclasses.field(default_factory=dict)
    witness: object = None
    witness_image: object = None
    bound: int = 0

    def to_json(self):
        out = {"status": self.status, "bound": self.bound}
        if self.degrees:
            out["degrees"] = dict(self.degrees)
        if self.witness is not None:
            out["witness"] = str(self.witness)
            out["witness_image"] = str(self.witness_image)
        return out


def divisibility_witness(D, candidates=None):
    """An element ``a`` with ``D(a) != 0`` and ``a | D(a)`` in the algebra, if one is found.

    In a domain this rules out local nilpotency: ``D(a) = a*b`` would force
    the degree of ``D(a)`` to be at least that of ``a``, not one less.
    """
    alg = D.algebra
    cands = candidates if candidates is not None else alg.ring.gens()
    for a in cands:
        a = alg.ring.coerce(a)
        if alg.is_zero(a):
            continue
        da = derive(D, a)
        if da and membership(da, alg.ideal_of([a])):
            return a, da
    return None


def lnd_check(D, bound=None):
    """Three-way verdict on local nilpotency.

    A divisibility witness on a generator refutes nilpotency (the algebra is
    assumed to be a domain); otherwise each generator's chain is iterated up
    to ``bound`` applications.
    """
    bound = bound if bound is not None else get_config().lnd_bound
    found = divisibility_witness(D)
    if found is not None:
        return NilpotencyVerdict(NOT_NILPOTENT, witness=found[0], witness_image=found[1], bound=bound)
    degrees = {}
    for name in D.ring.names:
        chain = _chain(D, D.ring.gen(name), bound)
        if chain is None:
            return NilpotencyVerdict(INCONCLUSIVE, degrees=degrees, bound=bound)
        degrees[name] = len(chain) - 1 if chain else -1
    return NilpotencyVerdict(NILPOTENT, degrees=degrees, bound=bound)


@dataclasses.dataclass(frozen=True)
class DegreeReport:
    element: object
    degree: int

    def to_json(self):
        return {"element": str(self.element), "degree": self.degree}


def degree(D, a, bound=None):
    """``max{k : D^k(a) != 0}``; the zero element gets -1."""
    bound = bound if bound is not None else get_config().lnd_bound
    chain = _chain(D, a, bound)
    if chain is None:
        raise ResourceCapError(f"chain of {a} did not terminate within {bound} steps")
    return DegreeReport(D.ring.coerce(a), len(chain) - 1)


def exp_action(D, a, parameter="t", bound=None):
    """``sum t^k D^k(a) / k!`` in the ring extended by ``parameter``."""
    bound = bound if bound is not None else get_config().lnd_bound
    ring = D.ring
    if parameter in ring:
        raise PreconditionError(f"parameter name {parameter!r} clashes with a ring variable")
    chain = _chain(D, a, bound)
    if chain is None:
        raise ResourceCapError(f"chain of {a} did not terminate within {bound} steps")
    big = ring.extend(parameter)
    t = big.gen(parameter)
    out = big.zero()
    for k, term in enumerate(chain):
        out = out + term.to_ring(big) * t**k * Fraction(1, factorial(k))
    rels = Ideal(big, [r.to_ring(big) for r in D.algebra.relations])
    return normal_form(out, rels)


def kernel_member(D, a):
    return derive(D, a).is_zero()


def jacobian_derivation(algebra, relations, a1, a2, names=None):
    """``g -> det d(P_1..P_m, a1, a2, g)/d(names)`` reduced modulo the algebra.

    ``relations`` are the ``P_i``; ``names`` defaults to all ring variables
    and must have ``len(relations) + 3`` entries.
    """
    ring = algebra.ring
    names = list(names) if names is not None else list(ring.names)
    rels = [ring.coerce(p) for p in relations]
    if len(rels) + 3 != len(names):
        raise PreconditionError(
            f"Jacobian derivation needs {len(rels) + 3} variables, got {len(names)}"
        )
    a1, a2 = ring.coerce(a1), ring.coerce(a2)
    images = {}
    for n in names:
        images[n] = algebra.reduce(jacobian_determinant(rels + [a1, a2, ring.gen(n)], names))
    return Derivation(algebra, images)
