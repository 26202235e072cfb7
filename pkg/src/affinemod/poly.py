"""Sparse multivariate polynomials over Q.

A :class:`Ring` is an ordered tuple of variable names; a :class:`Polynomial`
maps exponent tuples (dense, one slot per ring variable) to nonzero
:class:`fractions.Fraction` coefficients.  Polynomials are immutable.

Weights are integer tuples compared lexicographically, which lets a fixed
number of integer "levels" stand in for rationally independent real weights.
"""

from fractions import Fraction
from types import MappingProxyType

from . import kernels
from .errors import ParseError, PreconditionError, RingMismatchError
from .syntax import evaluate, parse_expression

_SCALARS = (int, Fraction)


def _grevlex_key(exps):
    return (sum(exps), tuple(-e for e in reversed(exps)))


def _lex_matrix(n):
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


class Ring:
    """Polynomial ring Q[names]."""

    __slots__ = ("names", "_index")

    def __init__(self, names):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise PreconditionError(f"duplicate variable names in {names}")
        for n in names:
            if not (isinstance(n, str) and n.isidentifier()):
                raise PreconditionError(f"invalid variable name {n!r}")
        self.names = names
        self._index = {n: i for i, n in enumerate(names)}

    def __eq__(self, other):
        return isinstance(other, Ring) and self.names == other.names

    def __hash__(self):
        return hash(("Ring", self.names))

    def __repr__(self):
        return f"Q[{','.join(self.names)}]"

    def __contains__(self, name):
        return name in self._index

    def __len__(self):
        return len(self.names)

    @property
    def ngens(self):
        return len(self.names)

    def index(self, name):
        try:
            return self._index[name]
        except KeyError:
            raise PreconditionError(f"unknown variable {name!r} in {self!r}") from None

    def zero(self):
        return Polynomial._raw(self, {})

    def one(self):
        return self.const(1)

    def const(self, c):
        c = Fraction(c)
        return Polynomial._raw(self, {(0,) * self.ngens: c} if c else {})

    def gen(self, name):
        e = [0] * self.ngens
        e[self.index(name)] = 1
        return Polynomial._raw(self, {tuple(e): Fraction(1)})

    def gens(self):
        return tuple(self.gen(n) for n in self.names)

    def monomial(self, exps, coeff=1):
        exps = tuple(exps)
        if len(exps) != self.ngens or any(e < 0 for e in exps):
            raise PreconditionError(f"bad exponent vector {exps} for {self!r}")
        return Polynomial(self, {exps: coeff})

    def parse(self, text):
        """Parse ``text`` (e.g. ``"x*v1 - y^3 + z^2"``) into this ring."""
        return self.from_expr(parse_expression(text))

    def from_expr(self, expr):
        env = {n: self.gen(n) for n in self.names}
        value = evaluate(expr, env)
        return self.coerce(value)

    def coerce(self, value):
        if isinstance(value, Polynomial):
            if value.ring != self:
                return value.to_ring(self)
            return value
        if isinstance(value, _SCALARS):
            return self.const(value)
        if isinstance(value, str):
            return self.parse(value)
        raise TypeError(f"cannot coerce {value!r} into {self!r}")

    def __call__(self, value):
        return self.coerce(value)

    def extend(self, *names):
        return Ring(self.names + tuple(names))

    def drop(self, names):
        names = set(names)
        return Ring(n for n in self.names if n not in names)

    def fresh_names(self, count, preferred=("z", "u", "v", "w", "s", "t")):
        """``count`` identifiers not already used in the ring."""
        out = []
        for n in preferred:
            if len(out) == count:
                return out
            if n not in self:
                out.append(n)
        i = 1
        while len(out) < count:
            n = f"y{i}"
            if n not in self and n not in out:
                out.append(n)
            i += 1
        return out


class Polynomial:
    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring, terms=None):
        clean = {}
        n = ring.ngens
        for e, c in (terms or {}).items():
            e = tuple(int(x) for x in e)
            if len(e) != n or any(x < 0 for x in e):
                raise PreconditionError(f"bad exponent vector {e} for {ring!r}")
            c = Fraction(c)
            if c:
                clean[e] = clean.get(e, 0) + c
                if not clean[e]:
                    del clean[e]
        self.ring = ring
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, ring, terms):
        p = cls.__new__(cls)
        p.ring = ring
        p._terms = terms
        p._hash = None
        return p

    # -- access ------------------------------------------------------------

    @property
    def terms(self):
        return MappingProxyType(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self):
        return not self._terms

    def is_constant(self):
        return not self._terms or (len(self._terms) == 1 and not any(next(iter(self._terms))))

    def constant_value(self):
        if not self.is_constant():
            raise PreconditionError(f"{self} is not a constant")
        return next(iter(self._terms.values()), Fraction(0))

    def coefficient(self, exps):
        return self._terms.get(tuple(exps), Fraction(0))

    def total_degree(self):
        if not self._terms:
            raise PreconditionError("degree of the zero polynomial")
        return max(sum(e) for e in self._terms)

    def degree_in(self, name):
        i = self.ring.index(name)
        return max((e[i] for e in self._terms), default=0)

    def variables(self):
        used = set()
        for e in self._terms:
            used.update(i for i, x in enumerate(e) if x)
        return {self.ring.names[i] for i in sorted(used)}

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatchError(f"ring mismatch: {self.ring!r} vs {other.ring!r}")
            return other
        if isinstance(other, _SCALARS):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Polynomial._raw(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.ring, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if isinstance(other, _SCALARS):
            c = Fraction(other)
            if not c:
                return self.ring.zero()
            return Polynomial._raw(self.ring, {e: v * c for e, v in self._terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Polynomial._raw(self.ring, kernels.mul_terms(self._terms, other._terms))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, _SCALARS):
            if other == 0:
                raise ZeroDivisionError("polynomial division by zero")
            return self * (1 / Fraction(other))
        return NotImplemented

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise PreconditionError("exponent must be a non-negative integer")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, _SCALARS):
            return self.is_constant() and self.constant_value() == other
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    # -- transformations ---------------------------------------------------

    def diff(self, name):
        return partial_derivative(self, name)

    def to_ring(self, ring):
        """Embed into ``ring`` by variable name."""
        if ring == self.ring:
            return self
        pos = []
        for i, n in enumerate(self.ring.names):
            pos.append(ring._index.get(n))
        out = {}
        for e, c in self._terms.items():
            ne = [0] * ring.ngens
            for i, x in enumerate(e):
                if x:
                    if pos[i] is None:
                        raise RingMismatchError(
                            f"variable {self.ring.names[i]!r} of {self} is not in {ring!r}"
                        )
                    ne[pos[i]] = x
            out[tuple(ne)] = c
        return Polynomial._raw(ring, out)

    def subs(self, mapping, ring=None):
        """Substitute variables by polynomials/scalars, landing in ``ring``.

        Unmapped variables are kept and must exist in the target ring.
        """
        target = ring or self.ring
        images = []
        for n in self.ring.names:
            if n in mapping:
                images.append(target.coerce(mapping[n]))
            else:
                images.append(target.gen(n) if n in target else None)
        result = target.zero()
        power_cache = {}
        for e, c in self._terms.items():
            term = target.const(c)
            for i, x in enumerate(e):
                if not x:
                    continue
                if images[i] is None:
                    raise RingMismatchError(f"variable {self.ring.names[i]!r} has no image in {target!r}")
                key = (i, x)
                if key not in power_cache:
                    power_cache[key] = images[i] ** x
                term = term * power_cache[key]
            result = result + term
        return result

    def evaluate(self, point):
        """Evaluate at ``point`` (a mapping from names to rationals)."""
        total = Fraction(0)
        vals = [Fraction(point[n]) if n in point else None for n in self.ring.names]
        for e, c in self._terms.items():
            t = c
            for i, x in enumerate(e):
                if x:
                    if vals[i] is None:
                        raise PreconditionError(f"no value for {self.ring.names[i]!r}")
                    t *= vals[i] ** x
            total += t
        return total

    def leading_term(self, matrix):
        if not self._terms:
            raise PreconditionError("leading term of zero")
        return kernels.leading_term(self._terms, matrix)

    def monic(self, matrix):
        if not self._terms:
            return self
        _, c = self.leading_term(matrix)
        return self * (1 / c)

    # -- printing ----------------------------------------------------------

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for e in sorted(self._terms, key=_grevlex_key, reverse=True):
            c = self._terms[e]
            mono = "*".join(
                n if x == 1 else f"{n}^{x}" for n, x in zip(self.ring.names, e) if x
            )
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"Polynomial({str(self)!r}, ring={self.ring!r})"


# -- free functions ----------------------------------------------------------


def partial_derivative(p, name):
    i = p.ring.index(name)
    out = {}
    for e, c in p.items():
        if e[i]:
            ne = list(e)
            ne[i] -= 1
            out[tuple(ne)] = c * e[i]
    return Polynomial._raw(p.ring, out)


def jacobian_determinant(ps, names):
    """Determinant of the matrix ``[d ps[i] / d names[j]]``, expanded exactly."""
    ps = list(ps)
    names = list(names)
    if len(ps) != len(names):
        raise PreconditionError(f"jacobian needs a square matrix, got {len(ps)}x{len(names)}")
    if not ps:
        raise PreconditionError("empty jacobian")
    ring = ps[0].ring
    for p in ps:
        if p.ring != ring:
            raise RingMismatchError("jacobian entries live in different rings")
    matrix = [[partial_derivative(p, v) for v in names] for p in ps]
    return determinant(matrix, ring)


def determinant(matrix, ring):
    """Laplace expansion along rows with memoisation on column subsets."""
    n = len(matrix)
    memo = {}

    def det(row, cols):
        if row == n:
            return ring.one()
        key = (row, cols)
        if key in memo:
            return memo[key]
        total = ring.zero()
        sign = 1
        for j in range(n):
            if cols >> j & 1:
                continue
            entry = matrix[row][j]
            if entry:
                minor = det(row + 1, cols | (1 << j))
                if minor:
                    term = entry * minor
                    total = total + term if sign > 0 else total - term
            sign = -sign
        memo[key] = total
        return total

    return det(0, 0)


class WeightFunction:
    """Per-variable integer weight vectors of a fixed length ``levels``.

    Vectors add componentwise and compare lexicographically.  Variables not
    listed get the zero vector.
    """

    def __init__(self, weights, levels=None):
        weights = {k: tuple(int(x) for x in v) for k, v in dict(weights).items()}
        lengths = {len(v) for v in weights.values()}
        if levels is None:
            if len(lengths) > 1:
                raise PreconditionError(f"weight vectors of different lengths: {sorted(lengths)}")
            levels = lengths.pop() if lengths else 1
        elif lengths - {levels}:
            raise PreconditionError(f"weight vectors must have length {levels}")
        self.levels = levels
        self.weights = weights

    def __eq__(self, other):
        return isinstance(other, WeightFunction) and (self.levels, self.weights) == (
            other.levels,
            other.weights,
        )

    def __repr__(self):
        inner = ", ".join(f"{k}: {v}" for k, v in self.weights.items())
        return f"WeightFunction({{{inner}}})"

    def of(self, name):
        return self.weights.get(name, (0,) * self.levels)

    def rows(self, ring):
        """Weight matrix for ``ring``: one row per level, one column per variable."""
        cols = [self.of(n) for n in ring.names]
        return tuple(tuple(col[k] for col in cols) for k in range(self.levels))

    def monomial_weight(self, ring, exps):
        return kernels.monomial_key(exps, self.rows(ring))

    def restrict(self, names):
        return WeightFunction({n: self.of(n) for n in names}, self.levels)

    def matrix_report(self, ring):
        return {n: list(self.of(n)) for n in ring.names}


def weight_degree(p, w):
    if p.is_zero():
        raise PreconditionError("weight degree of the zero polynomial is undefined")
    rows = w.rows(p.ring)
    return max(kernels.monomial_key(e, rows) for e in p._terms)


def homogeneous_components(p, w):
    """Mapping weight vector -> weighted-homogeneous component."""
    rows = w.rows(p.ring)
    parts = {}
    for e, c in p.items():
        parts.setdefault(kernels.monomial_key(e, rows), {})[e] = c
    return {k: Polynomial._raw(p.ring, v) for k, v in parts.items()}


def principal_component(p, w):
    if p.is_zero():
        raise PreconditionError("principal component of the zero polynomial is undefined")
    rows = w.rows(p.ring)
    keyed = [(kernels.monomial_key(e, rows), e, c) for e, c in p.items()]
    top = max(k for k, _, _ in keyed)
    return Polynomial._raw(p.ring, {e: c for k, e, c in keyed if k == top})


def is_homogeneous(p, w):
    return p.is_zero() or len(homogeneous_components(p, w)) == 1


def divide_exact(p, q):
    """``p / q`` when ``q`` divides ``p``; raises :class:`PreconditionError` otherwise."""
    if q.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if p.ring != q.ring:
        raise RingMismatchError("ring mismatch in division")
    mat = _lex_matrix(p.ring.ngens)
    lead, lc = q.leading_term(mat)
    rem = dict(p._terms)
    quotient = {}
    q_terms = list(q.items())
    while rem:
        e, c = kernels.leading_term(rem, mat)
        if not kernels.divides(lead, e):
            raise PreconditionError(f"{q} does not divide {p}")
        m = tuple(a - b for a, b in zip(e, lead))
        k = c / lc
        quotient[m] = k
        for qe, qc in q_terms:
            ne = tuple(a + b for a, b in zip(qe, m))
            v = rem.get(ne, 0) - k * qc
            if v:
                rem[ne] = v
            else:
                rem.pop(ne, None)
    return Polynomial._raw(p.ring, quotient)


def _univariate_index(p):
    used = set()
    for e in p._terms:
        used.update(i for i, x in enumerate(e) if x)
    return used


def _univariate_gcd(a, b, idx):
    ring = a.ring
    mat = tuple(tuple(int(j == idx) for j in range(ring.ngens)) for _ in range(1))
    while b:
        lead_b, lc_b = b.leading_term(mat)
        r = a
        while r and r.leading_term(mat)[0][idx] >= lead_b[idx]:
            lead_r, lc_r = r.leading_term(mat)
            shift = [0] * ring.ngens
            shift[idx] = lead_r[idx] - lead_b[idx]
            r = r - b * ring.monomial(shift, lc_r / lc_b)
        a, b = b, r
    return a


def gcd(p, q):
    """Monic (under lex) greatest common divisor of two polynomials."""
    if p.ring != q.ring:
        raise RingMismatchError("ring mismatch in gcd")
    ring = p.ring
    mat = _lex_matrix(ring.ngens)
    if p.is_zero():
        return q.monic(mat)
    if q.is_zero():
        return p.monic(mat)
    if p.is_constant() or q.is_constant():
        return ring.one()
    used = _univariate_index(p) | _univariate_index(q)
    if len(used) == 1:
        g = _univariate_gcd(p, q, used.pop())
    else:
        from .ideal import Ideal, intersect

        inter = intersect(Ideal(ring, [p]), Ideal(ring, [q]))
        basis = inter.groebner()
        if len(basis) != 1:
            raise PreconditionError("intersection of principal ideals is not principal")
        g = divide_exact(p * q, basis[0])
    return g.monic(mat)


def squarefree_part(p):
    """Generator of the radical of ``(p)``: ``p / gcd(p, all partials)``."""
    if p.is_zero():
        raise PreconditionError("squarefree part of the zero polynomial")
    mat = _lex_matrix(p.ring.ngens)
    if p.is_constant():
        return p.ring.one()
    g = p
    for n in sorted(p.variables(), key=p.ring.index):
        g = gcd(g, partial_derivative(p, n))
        if g.is_constant():
            break
    return divide_exact(p, g).monic(mat)

