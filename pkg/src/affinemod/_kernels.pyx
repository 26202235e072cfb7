# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled reduction kernels (same contract as ``_kernels_py``)."""

from heapq import heapify, heappop, heappush
from cpython.mem cimport PyMem_Malloc, PyMem_Free

BACKEND = "cython"


cdef tuple _key(tuple exps, long *mat, Py_ssize_t nrows, Py_ssize_t nvars, int sign):
    cdef Py_ssize_t i, j
    cdef long s
    cdef list out = [None] * nrows
    cdef long *ev = <long *> PyMem_Malloc(nvars * sizeof(long))
    for j in range(nvars):
        ev[j] = exps[j]
    for i in range(nrows):
        s = 0
        for j in range(nvars):
            s += mat[i * nvars + j] * ev[j]
        out[i] = sign * s
    PyMem_Free(ev)
    return tuple(out)


cdef long *_load_matrix(matrix, Py_ssize_t *nrows, Py_ssize_t *nvars) except NULL:
    cdef Py_ssize_t i, j
    nrows[0] = len(matrix)
    nvars[0] = len(matrix[0]) if nrows[0] else 0
    cdef long *mat = <long *> PyMem_Malloc((nrows[0] * nvars[0] + 1) * sizeof(long))
    for i in range(nrows[0]):
        row = matrix[i]
        for j in range(nvars[0]):
            mat[i * nvars[0] + j] = row[j]
    return mat


def monomial_key(exps, matrix):
    cdef Py_ssize_t nrows, nvars
    cdef long *mat = _load_matrix(matrix, &nrows, &nvars)
    try:
        return _key(tuple(exps), mat, nrows, nvars, 1)
    finally:
        PyMem_Free(mat)


def divides(a, b):
    cdef Py_ssize_t i, n = len(a)
    for i in range(n):
        if <long> a[i] > <long> b[i]:
            return False
    return True


def leading_term(terms, matrix):
    cdef Py_ssize_t nrows, nvars
    cdef long *mat = _load_matrix(matrix, &nrows, &nvars)
    best = None
    best_key = None
    try:
        for e in terms:
            k = _key(e, mat, nrows, nvars, 1)
            if best_key is None or k > best_key:
                best, best_key = e, k
    finally:
        PyMem_Free(mat)
    return best, terms[best]


def sorted_terms(terms, matrix):
    cdef Py_ssize_t nrows, nvars
    cdef long *mat = _load_matrix(matrix, &nrows, &nvars)
    try:
        keyed = [(_key(e, mat, nrows, nvars, 1), e, c) for e, c in terms.items()]
    finally:
        PyMem_Free(mat)
    keyed.sort(reverse=True)
    return [(e, c) for _, e, c in keyed]


def reduce_terms(terms, basis, matrix, long max_steps=-1):
    cdef Py_ssize_t nrows, nvars, nb = len(basis), i, j, k
    cdef long *mat = _load_matrix(matrix, &nrows, &nvars)
    cdef long *leads = <long *> PyMem_Malloc((nb * nvars + 1) * sizeof(long))
    cdef long *ev = <long *> PyMem_Malloc((nvars + 1) * sizeof(long))
    cdef long steps = 0
    cdef Py_ssize_t found
    cdef bint ok
    try:
        for i in range(nb):
            lead = basis[i][0]
            for j in range(nvars):
                leads[i * nvars + j] = lead[j]
        p = dict(terms)
        heap = [(_key(e, mat, nrows, nvars, -1), e) for e in p]
        heapify(heap)
        queued = set(p)
        rem = {}
        while heap:
            _, e = heappop(heap)
            queued.discard(e)
            c = p.pop(e, 0)
            if c == 0:
                continue
            for j in range(nvars):
                ev[j] = e[j]
            found = -1
            for i in range(nb):
                ok = True
                for j in range(nvars):
                    if leads[i * nvars + j] > ev[j]:
                        ok = False
                        break
                if ok:
                    found = i
                    break
            if found < 0:
                rem[e] = c
                continue
            steps += 1
            if max_steps >= 0 and steps > max_steps:
                return rem, -1
            lead, lc, tail = basis[found]
            q = c / lc
            shift = [ev[j] - leads[found * nvars + j] for j in range(nvars)]
            for te, tc in tail:
                ne = tuple([te[j] + shift[j] for j in range(nvars)])
                nc = p.get(ne, 0) - q * tc
                if nc:
                    p[ne] = nc
                    if ne not in queued:
                        queued.add(ne)
                        heappush(heap, (_key(ne, mat, nrows, nvars, -1), ne))
                else:
                    p.pop(ne, None)
        return rem, steps
    finally:
        PyMem_Free(mat)
        PyMem_Free(leads)
        PyMem_Free(ev)


def mul_terms(a, b):
    cdef Py_ssize_t j, n
    out = {}
    for ea, ca in a.items():
        n = len(ea)
        for eb, cb in b.items():
            e = tuple([<long> ea[j] + <long> eb[j] for j in range(n)])
            c = out.get(e, 0) + ca * cb
            if c:
                out[e] = c
            else:
                out.pop(e, None)
    return out
