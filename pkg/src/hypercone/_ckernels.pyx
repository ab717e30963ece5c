# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=False
"""Compiled twins of the functions in ``_pykernels``.

Coefficients stay Python integers/Fractions (arbitrary precision); the gain
comes from typed loop indices, list access without bounds checks and
avoiding interpreter dispatch in the inner loops.
"""
from fractions import Fraction
from heapq import heappop, heappush
from math import gcd

BACKEND = "cython"


cdef inline object _norm(object c):
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


cdef object _div(object a, object b):
    if type(a) is int and type(b) is int:
        q, r = divmod(a, b)
        if r == 0:
            return q
        return Fraction(a, b)
    return _norm(Fraction(a) / b)


cdef inline tuple _add_exp(tuple ea, tuple eb, Py_ssize_t n):
    cdef list out = [0] * n
    cdef Py_ssize_t i
    for i in range(n):
        out[i] = <long>ea[i] + <long>eb[i]
    return tuple(out)


def poly_mul(dict a, dict b):
    if len(a) < len(b):
        a, b = b, a
    cdef dict out = {}
    cdef list bitems = list(b.items())
    cdef tuple ea, eb, e
    cdef object ca, cb, old
    cdef Py_ssize_t n, k, nb = len(bitems)
    if not a or not b:
        return {}
    n = len(next(iter(a)))
    for ea, ca in a.items():
        for k in range(nb):
            eb, cb = bitems[k]
            e = _add_exp(ea, eb, n)
            old = out.get(e)
            if old is None:
                out[e] = ca * cb
            else:
                out[e] = old + ca * cb
    return {e: _norm(c) for e, c in out.items() if c != 0}


cdef tuple _heap_key(tuple e):
    cdef long s = 0
    cdef Py_ssize_t i, n = len(e)
    for i in range(n):
        s += <long>e[i]
    return (-s, e[::-1])


def poly_divexact(dict a, dict b):
    if not a:
        return {}
    cdef tuple lead_b = None
    cdef tuple best = None
    cdef tuple key, e, en, shift, eb
    for e in b:
        key = _heap_key(e)
        if best is None or key < best:
            best = key
            lead_b = e
    lc_b = b[lead_b]
    cdef list rest_b = [(e, c) for e, c in b.items() if e != lead_b]
    cdef Py_ssize_t n = len(lead_b), i, k, nr = len(rest_b)
    cdef dict r = dict(a)
    cdef list heap = [(_heap_key(e), e) for e in r]
    heap.sort()
    cdef dict q = {}
    cdef list sh
    cdef long x
    while heap:
        _, e = heappop(heap)
        c = r.pop(e, 0)
        if c == 0:
            continue
        sh = [0] * n
        for i in range(n):
            x = <long>e[i] - <long>lead_b[i]
            if x < 0:
                return None
            sh[i] = x
        shift = tuple(sh)
        t = _div(c, lc_b)
        q[shift] = t
        for k in range(nr):
            eb, cb = rest_b[k]
            en = _add_exp(shift, eb, n)
            old = r.get(en)
            if old is None:
                r[en] = -t * cb
                heappush(heap, (_heap_key(en), en))
            else:
                r[en] = old - t * cb
    return q


def poly_eval(list items, point):
    if not items:
        return 0
    cdef Py_ssize_t n = len(point), i, k
    cdef list top = [0] * n
    cdef tuple e
    for e, _ in items:
        for i in range(n):
            if e[i] > top[i]:
                top[i] = e[i]
    cdef list powers = []
    cdef list row
    for i in range(n):
        row = [1]
        p = point[i]
        for k in range(<Py_ssize_t>top[i]):
            row.append(row[k] * p)
        powers.append(row)
    total = 0
    for e, c in items:
        term = c
        for i in range(n):
            k = e[i]
            if k:
                term = term * (<list>powers[i])[k]
        total += term
    return total


cdef list _trim(list p):
    p = list(p)
    while p and p[len(p) - 1] == 0:
        p.pop()
    return p


cdef list _primitive(list p):
    g = 0
    for c in p:
        g = gcd(g, c)
    if g <= 1:
        return list(p)
    return [c // g for c in p]


cdef list _prem(list a, list b):
    cdef list r = list(a)
    cdef Py_ssize_t db = len(b) - 1, j, shift
    cdef Py_ssize_t k = len(a) - len(b) + 1
    lb = b[db]
    while r and len(r) - 1 >= db:
        lr = r[len(r) - 1]
        shift = len(r) - 1 - db
        for j in range(len(r)):
            r[j] = r[j] * lb
        for j in range(db + 1):
            r[shift + j] = r[shift + j] - lr * b[j]
        r.pop()
        k -= 1
        while r and r[len(r) - 1] == 0:
            r.pop()
    if k > 0:
        s = lb ** k
        r = [c * s for c in r]
    return r


def upoly_sturm(p):
    cdef list q = _trim(list(p))
    cdef list chain = [q]
    cdef list a, b, r
    cdef Py_ssize_t i, k
    if len(q) <= 1:
        return chain
    chain.append([i * q[i] for i in range(1, len(q))])
    while len(chain[len(chain) - 1]) > 1:
        a = chain[len(chain) - 2]
        b = chain[len(chain) - 1]
        r = _prem(a, b)
        if not r:
            break
        k = len(a) - len(b) + 1
        if b[len(b) - 1] < 0 and k % 2 == 1:
            r = _primitive(r)
        else:
            r = [-c for c in _primitive(r)]
        chain.append(r)
    return chain


cdef object _homog_eval(list p, object num, object den):
    cdef Py_ssize_t n = len(p) - 1, i
    acc = p[n]
    dpow = den
    for i in range(n - 1, -1, -1):
        acc = acc * num + p[i] * dpow
        dpow = dpow * den
    return acc


def upoly_sign_at(p, num, den):
    if not p:
        return 0
    v = _homog_eval(list(p), num, den)
    return (v > 0) - (v < 0)


def upoly_variations(list chain, num, den):
    cdef int count = 0, last = 0, s
    cdef list p
    for p in chain:
        if not p:
            continue
        v = _homog_eval(p, num, den)
        if v == 0:
            continue
        s = 1 if v > 0 else -1
        if last and s != last:
            count += 1
        last = s
    return count


def upoly_variations_inf(list chain, int sign):
    cdef int count = 0, last = 0, s
    cdef list p
    for p in chain:
        if not p:
            continue
        s = 1 if p[len(p) - 1] > 0 else -1
        if sign < 0 and (len(p) - 1) % 2 == 1:
            s = -s
        if last and s != last:
            count += 1
        last = s
    return count


def upoly_divexact(a, b):
    cdef list r = list(a)
    cdef list bb = list(b)
    cdef Py_ssize_t db = len(bb) - 1, k, j
    lb = bb[db]
    cdef list q = [0] * (len(r) - db)
    for k in range(len(r) - 1 - db, -1, -1):
        c, rem = divmod(r[k + db], lb)
        if rem:
            raise ArithmeticError("inexact univariate division")
        q[k] = c
        if c:
            for j in range(db + 1):
                r[k + j] = r[k + j] - c * bb[j]
    for j in range(db):
        if r[j]:
            raise ArithmeticError("inexact univariate division")
    return q
