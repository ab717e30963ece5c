"""Pure-Python versions of the hot kernels.

Every function here has a twin with the same signature in ``_ckernels.pyx``.
Coefficients are Python ``int`` or ``fractions.Fraction`` (never float);
univariate kernels work on ascending lists of ``int``.
"""
from fractions import Fraction
from heapq import heappop, heappush
from math import gcd

BACKEND = "python"


def _norm(c):
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def _div(a, b):
    if type(a) is int and type(b) is int:
        q, r = divmod(a, b)
        if r == 0:
            return q
        return Fraction(a, b)
    return _norm(Fraction(a) / b)


# -- sparse multivariate ------------------------------------------------------

def poly_mul(a, b):
    """Product of two term dicts ``{exponent tuple: coefficient}``."""
    if len(a) < len(b):
        a, b = b, a
    out = {}
    get = out.get
    bitems = list(b.items())
    for ea, ca in a.items():
        for eb, cb in bitems:
            e = tuple([x + y for x, y in zip(ea, eb)])
            out[e] = get(e, 0) + ca * cb
    return {e: _norm(c) for e, c in out.items() if c != 0}


def _heap_key(e):
    # min-heap pops the grevlex-largest exponent first
    return (-sum(e), e[::-1])


def poly_divexact(a, b):
    """Quotient ``a / b`` of term dicts, or ``None`` if the remainder is nonzero.

    Single-divisor reduction under graded reverse lex order: the first
    leading term not divisible by ``lt(b)`` proves a nonzero remainder.
    """
    if not a:
        return {}
    lead_b = min(b, key=_heap_key)
    lc_b = b[lead_b]
    rest_b = [(e, c) for e, c in b.items() if e != lead_b]
    r = dict(a)
    heap = [(_heap_key(e), e) for e in r]
    heap.sort()
    q = {}
    while heap:
        _, e = heappop(heap)
        c = r.pop(e, 0)
        if c == 0:
            continue
        shift = tuple([x - y for x, y in zip(e, lead_b)])
        if min(shift) < 0:
            return None
        t = _div(c, lc_b)
        q[shift] = t
        for eb, cb in rest_b:
            en = tuple([x + y for x, y in zip(shift, eb)])
            old = r.get(en)
            if old is None:
                r[en] = -t * cb
                heappush(heap, (_heap_key(en), en))
            else:
                r[en] = old - t * cb
    return q


def poly_eval(items, point):
    """Evaluate ``[(exponents, coeff), ...]`` at a point (ints or Fractions)."""
    if not items:
        return 0
    n = len(point)
    top = [0] * n
    for e, _ in items:
        for i in range(n):
            if e[i] > top[i]:
                top[i] = e[i]
    powers = []
    for i in range(n):
        row = [1]
        p = point[i]
        for _ in range(top[i]):
            row.append(row[-1] * p)
        powers.append(row)
    total = 0
    for e, c in items:
        term = c
        for i in range(n):
            k = e[i]
            if k:
                term = term * powers[i][k]
        total += term
    return total


# -- univariate integer polynomials (ascending coefficient lists) ------------

def upoly_trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def upoly_content(p):
    g = 0
    for c in p:
        g = gcd(g, c)
    return g


def upoly_primitive(p):
    """Divide by the positive content; sign of the leading coefficient is kept."""
    g = upoly_content(p)
    if g <= 1:
        return list(p)
    return [c // g for c in p]


def upoly_derivative(p):
    return [i * p[i] for i in range(1, len(p))]


def upoly_prem(a, b):
    """Pseudo-remainder of ``lc(b)**k * a`` by ``b`` with ``k = deg a - deg b + 1``."""
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    k = len(a) - len(b) + 1
    while len(r) - 1 >= db and r:
        lr = r[-1]
        shift = len(r) - 1 - db
        r = [c * lb for c in r]
        for j in range(db + 1):
            r[shift + j] -= lr * b[j]
        r.pop()
        k -= 1
        while r and r[-1] == 0:
            r.pop()
    if k > 0:
        s = lb ** k
        r = [c * s for c in r]
    return r


def upoly_sturm(p):
    """Sturm chain ``p, p', -rem, ...`` with every remainder made primitive.

    Scaling by positive constants keeps the sign pattern.  For non
    square-free input the chain stops at ``gcd(p, p')``.
    """
    p = upoly_trim(p)
    chain = [p]
    if len(p) <= 1:
        return chain
    chain.append(upoly_derivative(p))
    while len(chain[-1]) > 1:
        a, b = chain[-2], chain[-1]
        r = upoly_prem(a, b)
        if not r:
            break
        k = len(a) - len(b) + 1
        if b[-1] < 0 and k % 2 == 1:
            r = upoly_primitive(r)
        else:
            r = [-c for c in upoly_primitive(r)]
        chain.append(r)
    return chain


def _homog_eval(p, num, den):
    n = len(p) - 1
    acc = p[n]
    dpow = den
    for i in range(n - 1, -1, -1):
        acc = acc * num + p[i] * dpow
        dpow *= den
    return acc


def upoly_sign_at(p, num, den):
    """Sign of ``p(num/den)`` for ``den > 0``."""
    if not p:
        return 0
    v = _homog_eval(p, num, den)
    return (v > 0) - (v < 0)


def upoly_variations(chain, num, den):
    """Sign variations of the chain at ``num/den`` (``den > 0``), zeros skipped."""
    count = 0
    last = 0
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


def upoly_variations_inf(chain, sign):
    """Sign variations at ``+inf`` (``sign=1``) or ``-inf`` (``sign=-1``)."""
    count = 0
    last = 0
    for p in chain:
        if not p:
            continue
        s = 1 if p[-1] > 0 else -1
        if sign < 0 and (len(p) - 1) % 2 == 1:
            s = -s
        if last and s != last:
            count += 1
        last = s
    return count


def upoly_divexact(a, b):
    """Exact quotient ``a / b`` over the integers (caller guarantees divisibility)."""
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    q = [0] * (len(a) - db)
    for k in range(len(a) - 1 - db, -1, -1):
        c, rem = divmod(r[k + db], lb)
        if rem:
            raise ArithmeticError("inexact univariate division")
        q[k] = c
        if c:
            for j in range(db + 1):
                r[k + j] -= c * b[j]
    if any(r[:db]):
        raise ArithmeticError("inexact univariate division")
    return q
