"""Weight filtrations on presented algebras and their associated graded ideals.

Weights may be negative, so weight-first orders are generally not well
orders.  Initial ideals are therefore computed on the homogenisation: the
degrevlex basis of ``I`` homogenised with a fresh variable ``h`` generates
``I^h``; on homogeneous polynomials adding a multiple of the total degree to
the first weight level changes nothing, so the shifted weights give a genuine
term order refining ``w``.  Initial forms of that basis, with ``h = 1``,
generate the initial ideal of ``I``.
"""

import dataclasses
import math

from .errors import InvariantError, PreconditionError
from .ideal import Ideal, MonomialOrder, PresentedAlgebra, membership, normal_form
from .poly import (
    Polynomial,
    WeightFunction,
    is_homogeneous,
    principal_component,
    weight_degree,
)


def _vadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _vsub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _vscale(k, a):
    return tuple(k * x for x in a)


def family_names(m, blocks=()):
    """Variable names ``x, y, z, v1..vm`` followed by ``u{j}_{i}`` per extra block."""
    names = ["x", "y", "z"] + [f"v{i}" for i in range(1, m + 1)]
    for j, size in enumerate(blocks, start=1):
        names += [f"u{j}_{i}" for i in range(1, size + 1)]
    return names


class ConventionWeights(WeightFunction):
    """Two-level weights satisfying the family's weight constraints.

    Level one carries the real magnitudes, level two the independent
    direction that keeps ``d_1`` and ``d_x`` linearly independent.
    """

    def __init__(self, weights, k, l, n, block_exponents, e, degree_bound):
        super().__init__(weights, levels=2)
        self.k = k
        self.l = l
        self.n = tuple(n)
        self.block_exponents = tuple(tuple(b) for b in block_exponents)
        self.e = e
        self.degree_bound = degree_bound

    def constraints(self):
        """Each constraint with whether it holds exactly."""
        k, l = self.k, self.l
        dx, dy, dz, d1 = self.of("x"), self.of("y"), self.of("z"), self.of("v1")
        zero = (0, 0)
        out = {
            "k*d_y = l*d_z": _vscale(k, dy) == _vscale(l, dz),
            "d_1 + d_x = k*d_y": _vadd(d1, dx) == _vscale(k, dy),
            "d_1, d_x independent": d1[0] * dx[1] - d1[1] * dx[0] != 0,
            "d_x < 0": dx < zero,
            "d_y > 0": dy > zero,
            "d_1 >> d_y": d1[0] >= self.degree_bound * dz[0] and d1 > dy,
        }
        chain_ok = True
        for i, ni in enumerate(self.n, start=1):
            chain_ok &= _vadd(dx, self.of(f"v{i + 1}")) == _vscale(ni, self.of(f"v{i}"))
        out["d_x + d_(i+1) = n_i*d_i"] = chain_ok
        block_ok = True
        for j, exps in enumerate(self.block_exponents, start=1):
            block_ok &= self.of(f"u{j}_1") == d1
            for i, ni in enumerate(exps, start=1):
                lhs = _vadd(dx, self.of(f"u{j}_{i + 1}"))
                block_ok &= lhs == _vscale(ni, self.of(f"u{j}_{i}"))
        out["d_x + d_(j,i+1) = n_(j,i)*d_(j,i)"] = block_ok
        return out

    def report(self):
        return {
            "k": self.k,
            "l": self.l,
            "e": self.e,
            "degree_bound": self.degree_bound,
            "weights": {n: list(v) for n, v in self.weights.items()},
            "constraints": self.constraints(),
        }


def convention51_weights(k, l, n, extra_blocks=(), e=None, degree_bound=None):
    """Weights for the family with exponents ``n`` and extra blocks.

    ``d_y = (l, 0)``, ``d_z = (k, 0)``, ``d_x = (-e, 1)``, ``d_1 = (kl + e, -1)``
    and ``d_(i+1) = n_i*d_i - d_x``; each extra block starts at ``d_1`` and
    follows the same recursion with its own exponents.  ``e`` defaults to
    ``k*l*degree_bound``.
    """
    if k <= l or l < 2:
        raise PreconditionError(f"need k > l >= 2, got k={k}, l={l}")
    if math.gcd(k, l) != 1:
        raise PreconditionError(f"k={k} and l={l} are not coprime")
    n = [int(x) for x in n]
    if not n or any(x < 1 for x in n):
        raise PreconditionError("exponents n_i must be positive and m >= 2")
    blocks = [[int(x) for x in b] for b in extra_blocks]
    if any(x < 1 for b in blocks for x in b):
        raise PreconditionError("block exponents must be positive")
    if degree_bound is None:
        degree_bound = max([k] + n + [x for b in blocks for x in b])
    if e is None:
        e = k * l * degree_bound
    if e <= 0:
        raise PreconditionError("e must be positive")
    dx = (-e, 1)
    d1 = (k * l + e, -1)
    w = {"x": dx, "y": (l, 0), "z": (k, 0), "v1": d1}
    cur = d1
    for i, ni in enumerate(n, start=1):
        cur = _vsub(_vscale(ni, cur), dx)
        w[f"v{i + 1}"] = cur
    for j, exps in enumerate(blocks, start=1):
        cur = d1
        w[f"u{j}_1"] = cur
        for i, ni in enumerate(exps, start=1):
            cur = _vsub(_vscale(ni, cur), dx)
            w[f"u{j}_{i + 1}"] = cur
    weights = ConventionWeights(w, k, l, n, blocks, e, degree_bound)
    failed = [name for name, ok in weights.constraints().items() if not ok]
    if failed:
        raise PreconditionError(f"weight constraints violated: {', '.join(failed)}")
    return weights


# -- homogenisation -------------------------------------------------------------


def _fresh(ring, stem):
    name, i = stem, 0
    while name in ring:
        i += 1
        name = f"{stem}{i}"
    return name


def _homogenise(p, big, h):
    deg = p.total_degree()
    hi = big.index(h)
    out = {}
    for e, c in p.items():
        ne = list(e) + [0]
        ne[hi] = deg - sum(e)
        out[tuple(ne)] = c
    return Polynomial._raw(big, out)


def _dehomogenise(p, small, hi):
    out = {}
    for e, c in p.items():
        ne = e[:hi] + e[hi + 1 :]
        out[ne] = out.get(ne, 0) + c
    return Polynomial._raw(small, {e: c for e, c in out.items() if c})


def _shifted_order(ring, big, w):
    rows = w.rows(ring)
    shift = 1 - min(0, min(rows[0], default=0))
    first = tuple(x + shift for x in rows[0]) + (shift,)
    rest = [tuple(r) + (0,) for r in rows[1:]]
    tie = MonomialOrder.degrevlex(big).matrix
    return MonomialOrder("weight_block", big, [first] + rest + list(tie))


@dataclasses.dataclass(frozen=True)
class GradedPresentation:
    ring: object
    ideal: Ideal
    source: PresentedAlgebra
    weights: WeightFunction
    hom_ring: object
    hom_var: str
    hom_order: MonomialOrder
    hom_ideal: Ideal

    @property
    def algebra(self):
        return PresentedAlgebra(self.ring, self.ideal, check=False)

    def to_json(self):
        return {
            "ring": list(self.ring.names),
            "graded_ideal": [str(g) for g in self.ideal.gens],
            "weights": self.weights.matrix_report(self.ring),
        }


def graded_ideal(pres, w):
    """Ideal generated by the principal components of all elements of the defining ideal."""
    ring = pres.ring
    h = _fresh(ring, "h")
    big = ring.extend(h)
    hi = big.index(h)
    basis = pres.ideal.groebner()
    hom = Ideal(big, [_homogenise(g, big, h) for g in basis])
    order = _shifted_order(ring, big, w)
    if not order.is_well_order():
        raise InvariantError("shifted weight order is not a well order")
    gens = []
    for g in hom.groebner(order):
        lead = principal_component(g, _extend_weights(w, h))
        gens.append(_dehomogenise(lead, ring, hi))
    graded = Ideal(ring, gens)
    for g in graded.gens:
        if not is_homogeneous(g, w):
            raise InvariantError(f"graded generator {g} is not weighted homogeneous")
    for r in pres.relations:
        if not membership(principal_component(r, w), graded):
            raise InvariantError(f"principal component of {r} is missing from the graded ideal")
    reduced = Ideal(ring, _homogeneous_basis(graded, w))
    return GradedPresentation(ring, reduced, pres, w, big, h, order, hom)


def _extend_weights(w, h):
    return WeightFunction({**w.weights, h: (0,) * w.levels}, w.levels)


def _homogeneous_basis(ideal, w):
    # a minimal generating subset of the homogeneous generators, in a stable order
    gens = sorted(ideal.gens, key=lambda g: (len(g.variables()), g.total_degree(), str(g)))
    kept = []
    for g in gens:
        if kept and membership(g, Ideal(ideal.ring, kept)):
            continue
        kept.append(g)
    return kept


def minimal_representative(a, gp, max_shift=None):
    """A representative ``q`` of ``a`` whose principal component is outside the graded ideal.

    Its weight degree is the induced degree of ``a`` on the algebra.
    """
    ring = gp.ring
    a = ring.coerce(a)
    if membership(a, gp.source.ideal):
        raise PreconditionError(f"{a} is zero in the algebra")
    big = gp.hom_ring
    hv = big.gen(gp.hom_var)
    hi = big.index(gp.hom_var)
    base = _homogenise(a, big, gp.hom_var)
    limit = max_shift if max_shift is not None else 8 + 4 * a.total_degree()
    for r in range(limit + 1):
        red = normal_form(base * hv**r, gp.hom_ideal, gp.hom_order)
        q = _dehomogenise(red, ring, hi)
        if q.is_zero():
            raise InvariantError(f"{a} reduced to zero on the homogenisation")
        if not membership(principal_component(q, gp.weights), gp.ideal):
            return q
    raise PreconditionError(f"no minimal representative of {a} found with shift <= {limit}")


def minimal_degree(a, gp):
    """Induced weight degree of ``a`` on the algebra."""
    return weight_degree(minimal_representative(a, gp), gp.weights)


def gr_element(a, gp):
    """Image of ``a`` in the associated graded algebra (a homogeneous polynomial)."""
    return principal_component(minimal_representative(a, gp), gp.weights)


@dataclasses.dataclass(frozen=True)
class Candidate:
    poly: Polynomial
    kind: str  # "x", "y", "z", "v", or "binomial"
    label: str

    def to_json(self):
        return {"label": self.label, "kind": self.kind, "poly": str(self.poly)}


def homogeneous_irreducible_candidates(gp, k, l, m, parameter="c"):
    """Irreducible homogeneous elements up to scalars: ``x, y, z, v_i, y^k + c*z^l``.

    The binomial lives in the ring extended by the formal parameter ``c``.
    """
    ring = gp.ring
    expected = family_names(m)
    if list(ring.names[: len(expected)]) != expected:
        raise PreconditionError(f"not a family presentation: ring {ring!r}")
    out = [Candidate(ring.gen("x"), "x", "x"), Candidate(ring.gen("y"), "y", "y")]
    out.append(Candidate(ring.gen("z"), "z", "z"))
    out += [Candidate(ring.gen(f"v{i}"), "v", f"v{i}") for i in range(1, m + 1)]
    ext = ring.extend(parameter)
    binom = ext.gen("y") ** k + ext.gen(parameter) * ext.gen("z") ** l
    out.append(Candidate(binom, "binomial", f"y^{k} + {parameter}*z^{l}"))
    return out
