"""Gröbner bases and the ideal-theoretic predicates built on them.

Everything here works over Q with exact arithmetic.  Orders are integer
matrix orders (see :class:`MonomialOrder`); the reduction inner loop lives in
:mod:`affinemod.kernels`.
"""

import itertools
import random
import threading
from fractions import Fraction

from . import kernels
from .config import get_config
from .errors import PreconditionError, ResourceCapError, RingMismatchError
from .poly import Polynomial, Ring, divide_exact, partial_derivative


class MonomialOrder:
    """A monomial order given by an integer matrix (rows compared in turn)."""

    __slots__ = ("kind", "ring", "matrix")

    def __init__(self, kind, ring, matrix):
        self.kind = kind
        self.ring = ring
        self.matrix = tuple(tuple(int(x) for x in row) for row in matrix)

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and (self.ring, self.matrix) == (
            other.ring,
            other.matrix,
        )

    def __hash__(self):
        return hash((self.ring, self.matrix))

    def __repr__(self):
        return f"MonomialOrder({self.kind}, {self.ring!r})"

    @classmethod
    def lex(cls, ring, priority=None):
        """Lexicographic order; ``priority`` lists variables from largest down."""
        priority = list(priority) if priority is not None else list(ring.names)
        rest = [n for n in ring.names if n not in priority]
        rows = []
        for name in priority + rest:
            i = ring.index(name)
            rows.append([int(j == i) for j in range(ring.ngens)])
        return cls("lex", ring, rows)

    @classmethod
    def degrevlex(cls, ring):
        n = ring.ngens
        rows = [[1] * n] + [[-int(j == i) for j in range(n)] for i in range(n - 1, 0, -1)]
        if n == 0:
            rows = [[]]
        return cls("degrevlex", ring, rows)

    @classmethod
    def elimination(cls, ring, drop):
        drop = set(drop)
        first = [int(n in drop) for n in ring.names]
        return cls("elimination", ring, [first] + list(cls.degrevlex(ring).matrix))

    @classmethod
    def weight_block(cls, ring, weights, tie=None):
        """Order by the weight rows of ``weights`` first, then by ``tie``."""
        tie = tie or cls.degrevlex(ring)
        return cls("weight_block", ring, list(weights.rows(ring)) + list(tie.matrix))

    def is_well_order(self):
        # A matrix order is a well order iff the first nonzero entry in each column is positive.
        for j in range(self.ring.ngens):
            for row in self.matrix:
                if row[j]:
                    if row[j] < 0:
                        return False
                    break
            else:
                return False
        return True

    def key(self, exps):
        return kernels.monomial_key(exps, self.matrix)

    def leading_term(self, p):
        return p.leading_term(self.matrix)


# -- Buchberger -----------------------------------------------------------------


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


class _Entry:
    __slots__ = ("terms", "lead", "lc", "tail", "sugar")

    def __init__(self, terms, matrix, sugar):
        lead, lc = kernels.leading_term(terms, matrix)
        if lc != 1:
            terms = {e: c / lc for e, c in terms.items()}
            lc = Fraction(1)
        self.terms = terms
        self.lead = lead
        self.lc = lc
        self.tail = [(e, c) for e, c in terms.items() if e != lead]
        self.sugar = sugar

    def as_basis(self):
        return (self.lead, self.lc, self.tail)


def _spoly(f, g):
    lcm = _lcm(f.lead, g.lead)
    mf = tuple(a - b for a, b in zip(lcm, f.lead))
    mg = tuple(a - b for a, b in zip(lcm, g.lead))
    out = {}
    for e, c in f.tail:
        ne = _mono_mul(e, mf)
        out[ne] = out.get(ne, 0) + c
    for e, c in g.tail:
        ne = _mono_mul(e, mg)
        v = out.get(ne, 0) - c
        if v:
            out[ne] = v
        else:
            out.pop(ne, None)
    out = {e: c for e, c in out.items() if c}
    sugar = max(f.sugar + sum(mf), g.sugar + sum(mg))
    return out, sugar


def _buchberger(polys, matrix):
    """Reduced Gröbner basis of term dictionaries under ``matrix``."""
    cfg = get_config()
    steps_left = cfg.max_reduction_steps
    entries = []
    basis = set()
    pairs = set()

    def reduce(terms, idxs):
        nonlocal steps_left
        rem, used = kernels.reduce_terms(
            terms, [entries[i].as_basis() for i in sorted(idxs)], matrix, steps_left
        )
        if used < 0:
            raise ResourceCapError(
                f"Gröbner reduction exceeded {cfg.max_reduction_steps} steps"
            )
        steps_left -= used
        return rem

    def update(ih):
        h = entries[ih]
        mh = h.lead
        cands = set(basis)
        keep = set()
        while cands:
            ig = cands.pop()
            mg = entries[ig].lead
            lcm_hg = _lcm(mh, mg)

            def lcm_divides(ip):
                return kernels.divides(_lcm(mh, entries[ip].lead), lcm_hg)

            if _mono_mul(mh, mg) == lcm_hg or (
                not any(lcm_divides(ip) for ip in cands)
                and not any(lcm_divides(pr[1]) for pr in keep)
            ):
                keep.add((ih, ig))
        new_pairs = {
            (a, b) for a, b in keep if _mono_mul(mh, entries[b].lead) != _lcm(mh, entries[b].lead)
        }
        survivors = set()
        for i1, i2 in pairs:
            m1, m2 = entries[i1].lead, entries[i2].lead
            lcm12 = _lcm(m1, m2)
            if (
                not kernels.divides(mh, lcm12)
                or _lcm(m1, mh) == lcm12
                or _lcm(m2, mh) == lcm12
            ):
                survivors.add((i1, i2))
        pairs.clear()
        pairs.update(survivors | new_pairs)
        for ig in list(basis):
            if kernels.divides(mh, entries[ig].lead):
                basis.discard(ig)
        basis.add(ih)

    def add(terms, sugar):
        if len(entries) >= cfg.max_basis:
            raise ResourceCapError(f"Gröbner basis exceeded {cfg.max_basis} elements")
        entries.append(_Entry(terms, matrix, sugar))
        update(len(entries) - 1)

    inputs = sorted(
        (p for p in polys if p),
        key=lambda t: kernels.monomial_key(kernels.leading_term(t, matrix)[0], matrix),
    )
    for terms in inputs:
        sugar = max(sum(e) for e in terms)
        rem = reduce(terms, basis) if basis else dict(terms)
        if rem:
            add(rem, sugar)

    def pair_key(pr):
        f, g = entries[pr[0]], entries[pr[1]]
        lcm = _lcm(f.lead, g.lead)
        sugar = max(f.sugar + sum(lcm) - sum(f.lead), g.sugar + sum(lcm) - sum(g.lead))
        return (sugar, kernels.monomial_key(lcm, matrix), pr)

    while pairs:
        pr = min(pairs, key=pair_key)
        pairs.discard(pr)
        s, sugar = _spoly(entries[pr[0]], entries[pr[1]])
        if not s:
            continue
        rem = reduce(s, basis)
        if rem:
            add(rem, sugar)

    # interreduce the minimal basis
    final = sorted(basis, key=lambda i: kernels.monomial_key(entries[i].lead, matrix))
    reduced = []
    for i in final:
        others = [entries[j].as_basis() for j in final if j != i]
        e = entries[i]
        tail_rem, used = kernels.reduce_terms(dict(e.tail), others, matrix, -1)
        terms = dict(tail_rem)
        terms[e.lead] = e.lc
        reduced.append(terms)
    return reduced


# -- ideals ---------------------------------------------------------------------


class Ideal:
    """Ideal of ``ring`` given by generators, with a per-order basis cache."""

    def __init__(self, ring, generators=()):
        gens = []
        for g in generators:
            p = ring.coerce(g)
            if p.ring != ring:
                raise RingMismatchError(f"generator {p} not in {ring!r}")
            if p:
                gens.append(p)
        self.ring = ring
        self.gens = tuple(gens)
        self._cache = {}
        self._lock = threading.Lock()

    def __repr__(self):
        return f"Ideal({self!s}, ring={self.ring!r})"

    def __str__(self):
        return "(" + ", ".join(str(g) for g in self.gens) + ")"

    def __iter__(self):
        return iter(self.gens)

    def __len__(self):
        return len(self.gens)

    def groebner(self, order=None):
        order = order or MonomialOrder.degrevlex(self.ring)
        if order.ring != self.ring:
            raise RingMismatchError("order and ideal rings differ")
        cached = self._cache.get(order.matrix)
        if cached is not None:
            return cached
        if not order.is_well_order():
            raise PreconditionError(
                f"{order!r} is not a well order; use homogenisation for initial forms"
            )
        terms = _buchberger([dict(g.items()) for g in self.gens], order.matrix)
        basis = tuple(Polynomial._raw(self.ring, t) for t in terms)
        with self._lock:
            self._cache.setdefault(order.matrix, basis)
        return self._cache[order.matrix]

    def reduce(self, p, order=None):
        return normal_form(p, self, order)

    def __contains__(self, p):
        return membership(p, self)

    def __add__(self, other):
        if isinstance(other, Ideal):
            if other.ring != self.ring:
                raise RingMismatchError("ring mismatch in ideal sum")
            return Ideal(self.ring, self.gens + other.gens)
        return Ideal(self.ring, self.gens + tuple(self.ring.coerce(g) for g in other))

    def __mul__(self, other):
        if other.ring != self.ring:
            raise RingMismatchError("ring mismatch in ideal product")
        return Ideal(self.ring, [a * b for a in self.gens for b in other.gens])

    def __pow__(self, m):
        if m == 0:
            return Ideal(self.ring, [self.ring.one()])
        out = self
        for _ in range(m - 1):
            out = Ideal(out.ring, interreduce_generators(out * self))
        return out

    def to_ring(self, ring):
        return Ideal(ring, [g.to_ring(ring) for g in self.gens])

    def is_unit(self):
        return is_unit_ideal(self)

    def is_zero(self):
        return not self.gens

    def equals(self, other):
        return ideal_equal(self, other)


def interreduce_generators(ideal):
    """Generators with duplicates and obvious multiples dropped (cheap)."""
    seen = []
    for g in ideal.gens:
        if g not in seen and -g not in seen:
            seen.append(g)
    return seen


def groebner_basis(ideal, order=None):
    return list(ideal.groebner(order))


def normal_form(p, ideal, order=None):
    order = order or MonomialOrder.degrevlex(ideal.ring)
    p = ideal.ring.coerce(p)
    if p.ring != ideal.ring:
        raise RingMismatchError("polynomial and ideal rings differ")
    basis = ideal.groebner(order)
    entries = [p_.leading_term(order.matrix) for p_ in basis]
    kb = [
        (lead, lc, [(e, c) for e, c in g.items() if e != lead])
        for (lead, lc), g in zip(entries, basis)
    ]
    rem, used = kernels.reduce_terms(dict(p.items()), kb, order.matrix, -1)
    return Polynomial._raw(ideal.ring, rem)


def membership(p, ideal, certificate=False):
    """``p in ideal``; with ``certificate=True`` returns ``(bool, cofactors)``."""
    inside = normal_form(p, ideal).is_zero()
    if not certificate:
        return inside
    return inside, (lift(p, ideal) if inside else None)


def lift(p, ideal):
    """Cofactors ``c`` with ``sum(c[i] * ideal.gens[i]) == p``, or ``None``.

    Runs a cofactor-tracking Buchberger (product criterion only), so it is
    meant for small certificates rather than heavy computations.
    """
    ring = ideal.ring
    p = ring.coerce(p)
    order = MonomialOrder.degrevlex(ring)
    mat = order.matrix
    k = len(ideal.gens)
    zero = ring.zero()
    basis = []  # (poly, cofactors)
    for i, g in enumerate(ideal.gens):
        cof = [zero] * k
        cof[i] = ring.one()
        basis.append((g, cof))

    def divide(f):
        rem = ring.zero()
        quot = [zero] * len(basis)
        f = f
        while f:
            lead, lc = f.leading_term(mat)
            for idx, (g, _) in enumerate(basis):
                gl, gc = g.leading_term(mat)
                if kernels.divides(gl, lead):
                    m = ring.monomial(tuple(a - b for a, b in zip(lead, gl)), lc / gc)
                    quot[idx] = quot[idx] + m
                    f = f - m * g
                    break
            else:
                t = ring.monomial(lead, lc)
                rem = rem + t
                f = f - t
        return rem, quot

    todo = list(itertools.combinations(range(len(basis)), 2))
    steps = 0
    cap = get_config().max_basis
    while todo:
        i, j = todo.pop()
        (f, cf), (g, cg) = basis[i], basis[j]
        fl, fc = f.leading_term(mat)
        gl, gc = g.leading_term(mat)
        if _mono_mul(fl, gl) == _lcm(fl, gl):
            continue
        lcm = _lcm(fl, gl)
        mf = ring.monomial(tuple(a - b for a, b in zip(lcm, fl)), 1 / fc)
        mg = ring.monomial(tuple(a - b for a, b in zip(lcm, gl)), 1 / gc)
        s = mf * f - mg * g
        rem, quot = divide(s)
        if rem:
            cof = [mf * a - mg * b for a, b in zip(cf, cg)]
            for q, (_, cq) in zip(quot, basis):
                if q:
                    cof = [a - q * b for a, b in zip(cof, cq)]
            basis.append((rem, cof))
            n = len(basis) - 1
            todo.extend((m, n) for m in range(n))
            steps += 1
            if len(basis) > cap:
                raise ResourceCapError("cofactor lift exceeded the basis budget")
    rem, quot = divide(p)
    if rem:
        return None
    result = [zero] * k
    for q, (_, cq) in zip(quot, basis):
        if q:
            result = [a + q * b for a, b in zip(result, cq)]
    check = ring.zero()
    for c, g in zip(result, ideal.gens):
        check = check + c * g
    if check != p:
        from .errors import InvariantError

        raise InvariantError("cofactor certificate does not reproduce the polynomial")
    return result


def is_unit_ideal(ideal):
    basis = ideal.groebner()
    return len(basis) == 1 and basis[0].is_constant()


def ideal_equal(a, b):
    if a.ring != b.ring:
        raise RingMismatchError("ideal_equal on different rings")
    return all(membership(g, b) for g in a.gens) and all(membership(g, a) for g in b.gens)


def eliminate(ideal, drop):
    """``ideal ∩ Q[remaining variables]`` as an ideal of the smaller ring."""
    drop = [n for n in drop]
    for n in drop:
        ideal.ring.index(n)
    if not drop:
        return Ideal(ideal.ring, ideal.gens)
    order = MonomialOrder.elimination(ideal.ring, drop)
    idx = [ideal.ring.index(n) for n in drop]
    small = ideal.ring.drop(drop)
    kept = [g for g in ideal.groebner(order) if not any(e[i] for e in g._terms for i in idx)]
    return Ideal(small, [g.to_ring(small) for g in kept])


def _with_fresh(ring, stem="t"):
    name = stem
    i = 0
    while name in ring:
        i += 1
        name = f"{stem}{i}"
    return ring.extend(name), name


def intersect(a, b):
    if a.ring != b.ring:
        raise RingMismatchError("intersect on different rings")
    big, t = _with_fresh(a.ring)
    tv = big.gen(t)
    gens = [tv * g.to_ring(big) for g in a.gens] + [(1 - tv) * g.to_ring(big) for g in b.gens]
    return eliminate(Ideal(big, gens), [t])


def colon_ideal(ideal, f):
    """``{a : a*f in ideal}``."""
    f = ideal.ring.coerce(f)
    if f.is_zero():
        raise PreconditionError("colon by the zero polynomial")
    inter = intersect(ideal, Ideal(ideal.ring, [f]))
    return Ideal(ideal.ring, [divide_exact(g, f) for g in inter.groebner()])


def saturation(ideal, f):
    """``ideal : f^∞`` via the Rabinowitsch trick."""
    f = ideal.ring.coerce(f)
    big, t = _with_fresh(ideal.ring)
    gens = [g.to_ring(big) for g in ideal.gens] + [1 - big.gen(t) * f.to_ring(big)]
    return eliminate(Ideal(big, gens), [t])


def _leading_supports(ideal):
    order = MonomialOrder.degrevlex(ideal.ring)
    masks = set()
    for g in ideal.groebner(order):
        lead, _ = g.leading_term(order.matrix)
        masks.add(sum(1 << i for i, e in enumerate(lead) if e))
    return masks


def dimension(ideal):
    """Krull dimension of ``ring / ideal``; -1 for the unit ideal."""
    if is_unit_ideal(ideal):
        return -1
    masks = _leading_supports(ideal)
    n = ideal.ring.ngens
    for size in range(n, -1, -1):
        for combo in itertools.combinations(range(n), size):
            s = sum(1 << i for i in combo)
            if all(m & ~s for m in masks):
                return size
    return 0


class PresentedAlgebra:
    """``ring / ideal``, an affine algebra given by generators and relations."""

    def __init__(self, ring, relations=(), allow_zero=False, check=True):
        self.ring = ring
        self.ideal = relations if isinstance(relations, Ideal) else Ideal(ring, relations)
        if self.ideal.ring != ring:
            raise RingMismatchError("defining ideal lives in another ring")
        if check and not allow_zero and self.ideal.gens and is_unit_ideal(self.ideal):
            raise PreconditionError("defining ideal is the unit ideal (zero algebra)")

    def __repr__(self):
        if not self.ideal.gens:
            return repr(self.ring)
        return f"{self.ring!r}/{self.ideal!s}"

    @classmethod
    def polynomial_ring(cls, names):
        return cls(Ring(names))

    @property
    def relations(self):
        return self.ideal.gens

    def __call__(self, value):
        return self.ring.coerce(value)

    def reduce(self, p):
        return normal_form(self.ring.coerce(p), self.ideal)

    def is_zero(self, p):
        return self.reduce(p).is_zero()

    def equal(self, a, b):
        return self.is_zero(self.ring.coerce(a) - self.ring.coerce(b))

    def ideal_of(self, gens):
        """Ideal of the ambient ring generated by ``gens`` plus the relations."""
        return Ideal(self.ring, list(self.ideal.gens) + [self.ring.coerce(g) for g in gens])

    def dimension(self):
        return dimension(self.ideal)

    def simplify(self):
        """Eliminate variables solved linearly by a relation ``c*v - h``.

        Returns ``(algebra, substitution)`` where ``substitution`` maps each
        removed variable to its expression in the remaining ones.
        """
        algebra = self
        subst = {}
        while True:
            found = None
            for g in algebra.ideal.groebner():
                for name in sorted(g.variables(), key=algebra.ring.index, reverse=True):
                    i = algebra.ring.index(name)
                    lin = [(e, c) for e, c in g.items() if e[i]]
                    if len(lin) == 1 and lin[0][0][i] == 1 and sum(lin[0][0]) == 1:
                        found = (g, name, lin[0][1])
                        break
                if found:
                    break
            if not found:
                return algebra, subst
            g, name, c = found
            i = algebra.ring.index(name)
            rest = Polynomial._raw(algebra.ring, {e: v for e, v in g.items() if not e[i]})
            expr = rest * (-1 / c)
            small = algebra.ring.drop([name])
            expr_small = expr.to_ring(small)
            subst = {k: v.subs({name: expr_small}, small) for k, v in subst.items()}
            subst[name] = expr_small
            rels = [r.subs({name: expr_small}, small) for r in algebra.ideal.groebner()]
            algebra = PresentedAlgebra(small, [r for r in rels if r], check=False)


def _ambient(ambient, ring=None):
    if ambient is None:
        return PresentedAlgebra(ring)
    if isinstance(ambient, Ring):
        return PresentedAlgebra(ambient)
    return ambient


def is_regular_sequence(bs, ambient=None):
    bs = list(bs)
    if not bs:
        raise PreconditionError("empty sequence")
    amb = _ambient(ambient, bs[0].ring)
    current = Ideal(amb.ring, amb.ideal.gens)
    for b in bs:
        b = amb.ring.coerce(b)
        if b.is_zero():
            return False
        if current.gens:
            if not ideal_equal(colon_ideal(current, b), current):
                return False
        current = current + [b]
    return not is_unit_ideal(current)


def codimension(ideal, ambient):
    return dimension(ambient.ideal) - dimension(ideal)


def is_semiregular_sequence(bs, ambient=None):
    bs = list(bs)
    if not bs:
        raise PreconditionError("empty sequence")
    amb = _ambient(ambient, bs[0].ring)
    d = dimension(amb.ideal)
    return dimension(amb.ideal_of(bs)) == d - len(bs)


def jacobian_minors(rows, names, size):
    """All ``size``-minors of the Jacobian of ``rows`` w.r.t. ``names``."""
    from .poly import determinant

    ring = rows[0].ring
    mat = [[partial_derivative(r, n) for n in names] for r in rows]
    minors = []
    for rsel in itertools.combinations(range(len(rows)), size):
        for csel in itertools.combinations(range(len(names)), size):
            sub = [[mat[i][j] for j in csel] for i in rsel]
            d = determinant(sub, ring)
            if d:
                minors.append(d)
    return minors


def gradient_generic_independence(bs, ambient=None):
    """Dimension-drop surrogate for "gradients independent at generic points".

    True when the locus where the Jacobian of (relations, bs) drops rank cuts
    the zero set of ``bs`` in a set of strictly smaller dimension.
    """
    bs = [b for b in bs]
    amb = _ambient(ambient, bs[0].ring)
    ring = amb.ring
    codim = ring.ngens - dimension(amb.ideal)
    rows = list(amb.ideal.gens) + [ring.coerce(b) for b in bs]
    size = codim + len(bs)
    zero_set = amb.ideal_of(bs)
    dim_v = dimension(zero_set)
    if dim_v < 0:
        return False
    minors = jacobian_minors(rows, ring.names, size) if size <= ring.ngens else []
    bad = dimension(zero_set + minors)
    return bad < dim_v


def generic_semiregular_extension(ideal, f, target_length, seed=None, ambient=None):
    """``f = b0, b1, ...`` in ``ideal`` forming a semi-regular sequence.

    Each new element is a random combination ``sum(l_j * g_j)`` of the given
    generators with linear-polynomial coefficients ``l_j``.
    """
    ring = ideal.ring
    f = ring.coerce(f)
    amb = _ambient(ambient, ring)
    if f.is_zero():
        raise PreconditionError("f must be nonzero")
    if not membership(f, amb.ideal_of(ideal.gens)):
        raise PreconditionError("f must lie in the ideal")
    codim = dimension(amb.ideal) - dimension(amb.ideal_of(ideal.gens))
    if target_length > codim:
        raise PreconditionError(
            f"requested length {target_length} exceeds the codimension {codim} of V(I)"
        )
    cfg = get_config()
    rng = random.Random(cfg.seed if seed is None else seed)
    seq = [f]
    gens = list(ideal.gens)
    while len(seq) < target_length:
        for attempt in range(cfg.retry_budget):
            linear = attempt >= 3
            cand = ring.zero()
            for g in gens:
                coeff = ring.const(rng.randint(-3, 3))
                if linear:
                    for v in ring.gens():
                        coeff = coeff + v * rng.randint(-2, 2)
                cand = cand + coeff * g
            if cand.is_zero():
                continue
            if is_semiregular_sequence(seq + [cand], amb):
                seq.append(cand)
                break
        else:
            raise PreconditionError(
                f"no semi-regular extension found within {cfg.retry_budget} draws"
            )
    return seq


def is_representative_system(bs, ideal, ambient=None):
    """``bs`` generates ``ideal`` (modulo the ambient relations) and is semi-regular."""
    bs = [ideal.ring.coerce(b) for b in bs]
    amb = _ambient(ambient, ideal.ring)
    full = amb.ideal_of(ideal.gens)
    seq = amb.ideal_of(bs)
    if not all(membership(b, full) for b in bs):
        return False
    if not all(membership(g, seq) for g in ideal.gens):
        return False
    return is_semiregular_sequence(bs, amb)
