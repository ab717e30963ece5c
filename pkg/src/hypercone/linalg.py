"""Small exact linear algebra over the rationals (dense, Fraction entries)."""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Sequence


def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot columns.

    Pivot rows are chosen by smallest absolute numerator among nonzero
    candidates, which keeps entries small on integer input.
    """
    A = [[Fraction(x) for x in r] for r in rows]
    if not A:
        return [], []
    m, n = len(A), len(A[0])
    pivots = []
    r = 0
    for c in range(n):
        best = None
        for i in range(r, m):
            x = A[i][c]
            if x != 0 and (best is None or abs(x.numerator) < abs(A[best][c].numerator)):
                best = i
        if best is None:
            continue
        A[r], A[best] = A[best], A[r]
        p = A[r][c]
        A[r] = [x / p for x in A[r]]
        pivot_row = A[r]
        nz = [j for j in range(c, n) if pivot_row[j] != 0]
        for i in range(m):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                Ai = A[i]
                for j in nz:
                    Ai[j] -= f * pivot_row[j]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return A[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    if not rows:
        return 0
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence], n: int | None = None) -> list[list[Fraction]]:
    """Basis of ``{x : A x = 0}``, one vector per free column."""
    if not rows:
        if n is None:
            raise ValueError("need n for an empty matrix")
        return [[Fraction(int(i == j)) for i in range(n)] for j in range(n)]
    R, piv = rref(rows)
    n = len(rows[0])
    free = [c for c in range(n) if c not in set(piv)]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for r, c in enumerate(piv):
            v[c] = -R[r][f]
        basis.append(v)
    return basis


def solve(A: Sequence[Sequence], b: Sequence) -> list[Fraction]:
    """Solve a square nonsingular system exactly."""
    n = len(A)
    aug = [list(A[i]) + [b[i]] for i in range(n)]
    R, piv = rref(aug)
    if piv != list(range(n)):
        raise ValueError("singular system")
    return [R[i][n] for i in range(n)]


def primitive(v: Sequence) -> tuple[int, ...]:
    """Positive multiple of ``v`` with coprime integer entries (zero stays zero)."""
    fr = [Fraction(x) for x in v]
    den = lcm(*(x.denominator for x in fr)) if fr else 1
    ints = [int(x * den) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g > 1:
        ints = [x // g for x in ints]
    return tuple(ints)


def dot(a: Sequence, b: Sequence):
    return sum(x * y for x, y in zip(a, b))
