"""Pure-Python reduction kernels.

Mirror of ``_kernels.pyx``; both modules expose the same functions with the
same semantics so ``affinemod.kernels`` can pick either one at import time.

Monomials are exponent tuples.  A monomial order is given by an integer
matrix: the sort key of a monomial is the tuple of dot products with the
matrix rows, compared lexicographically (larger key = larger monomial).
"""

from heapq import heapify, heappop, heappush

BACKEND = "python"


def monomial_key(exps, matrix):
    return tuple(sum(r * e for r, e in zip(row, exps)) for row in matrix)


def _neg_key(exps, matrix):
    return tuple(-sum(r * e for r, e in zip(row, exps)) for row in matrix)


def divides(a, b):
    """True if monomial ``a`` divides monomial ``b``."""
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def leading_term(terms, matrix):
    """Return ``(exps, coeff)`` of the largest monomial; ``terms`` nonempty."""
    best = None
    best_key = None
    for e in terms:
        k = monomial_key(e, matrix)
        if best_key is None or k > best_key:
            best, best_key = e, k
    return best, terms[best]


def sorted_terms(terms, matrix):
    """Terms as a list of ``(exps, coeff)``, largest monomial first."""
    return sorted(terms.items(), key=lambda t: monomial_key(t[0], matrix), reverse=True)


def reduce_terms(terms, basis, matrix, max_steps=-1):
    """Fully reduce ``terms`` modulo ``basis``.

    ``basis`` is a list of ``(lead_exps, lead_coeff, tail)`` where ``tail`` is
    a list of ``(exps, coeff)`` pairs of the remaining terms.  Returns
    ``(remainder, steps)``; ``steps`` is -1 when ``max_steps`` was exceeded
    (the remainder is then meaningless).
    """
    p = dict(terms)
    heap = [(_neg_key(e, matrix), e) for e in p]
    heapify(heap)
    queued = set(p)
    rem = {}
    steps = 0
    while heap:
        _, e = heappop(heap)
        queued.discard(e)
        c = p.pop(e, 0)
        if c == 0:
            continue
        for lead, lc, tail in basis:
            if divides(lead, e):
                break
        else:
            rem[e] = c
            continue
        steps += 1
        if max_steps >= 0 and steps > max_steps:
            return rem, -1
        q = c / lc
        shift = tuple(x - y for x, y in zip(e, lead))
        for te, tc in tail:
            ne = tuple(x + y for x, y in zip(te, shift))
            nc = p.get(ne, 0) - q * tc
            if nc:
                p[ne] = nc
                if ne not in queued:
                    queued.add(ne)
                    heappush(heap, (_neg_key(ne, matrix), ne))
            else:
                p.pop(ne, None)
    return rem, steps


def mul_terms(a, b):
    """Product of two term dictionaries."""
    out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            c = out.get(e, 0) + ca * cb
            if c:
                out[e] = c
            else:
                out.pop(e, None)
    return out
