"""Symmetric matrix pencils ``A(x) = x_1 A_1 + ... + x_n A_n`` over the rationals."""
from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence

from hypercone.ring import Poly, PolyVec, Rational, as_rational, format_rational
from hypercone._pykernels import _norm as _canon


class SymmetryError(ValueError):
    pass


class SymMatrix:
    """Immutable symmetric ``m x m`` matrix with exact rational entries."""

    __slots__ = ("m", "rows")

    def __init__(self, rows: Sequence[Sequence]):
        rows = tuple(tuple(as_rational(x) for x in r) for r in rows)
        m = len(rows)
        if any(len(r) != m for r in rows):
            raise ValueError("matrix is not square")
        for i in range(m):
            for j in range(i + 1, m):
                if rows[i][j] != rows[j][i]:
                    raise SymmetryError(f"entries ({i},{j}) and ({j},{i}) differ")
        self.m = m
        self.rows = rows

    @classmethod
    def _raw(cls, rows) -> "SymMatrix":
        s = object.__new__(cls)
        s.m = len(rows)
        s.rows = rows
        return s

    @classmethod
    def identity(cls, m: int) -> "SymMatrix":
        return cls([[1 if i == j else 0 for j in range(m)] for i in range(m)])

    @classmethod
    def diag(cls, values: Sequence) -> "SymMatrix":
        m = len(values)
        return cls([[values[i] if i == j else 0 for j in range(m)] for i in range(m)])

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return isinstance(other, SymMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __add__(self, other: "SymMatrix") -> "SymMatrix":
        if self.m != other.m:
            raise ValueError("size mismatch")
        return SymMatrix._raw(
            tuple(tuple(_canon(a + b) for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows))
        )

    def scale(self, c) -> "SymMatrix":
        c = as_rational(c)
        return SymMatrix._raw(tuple(tuple(_canon(a * c) for a in r) for r in self.rows))

    def to_lists(self) -> list[list]:
        return [list(r) for r in self.rows]

    def to_float(self):
        import numpy as np

        return np.array([[float(x) for x in r] for r in self.rows])

    def __repr__(self):
        return f"SymMatrix({[[format_rational(x) for x in r] for r in self.rows]})"

    # definiteness

    def ldl(self):
        """``(L, D)`` with ``M = L diag(D) L^T`` using diagonal pivots only.

        Raises ``ValueError`` at the first zero pivot that cannot be skipped.
        """
        m = self.m
        a = [[Fraction(x) for x in r] for r in self.rows]
        L = [[Fraction(int(i == j)) for j in range(m)] for i in range(m)]
        D = []
        for k in range(m):
            p = a[k][k]
            if p == 0:
                raise ValueError(f"zero pivot at {k}")
            D.append(p)
            for i in range(k + 1, m):
                L[i][k] = a[i][k] / p
            for i in range(k + 1, m):
                lik = L[i][k]
                if lik:
                    for j in range(k + 1, i + 1):
                        a[i][j] -= lik * a[j][k]
                        a[j][i] = a[i][j]
        return L, D

    def is_positive_definite(self) -> bool:
        """Exact test: every diagonal pivot of the symmetric elimination is positive."""
        return _pivot_scan(self.rows, strict=True)

    def is_psd(self) -> bool:
        """Exact test for ``M >= 0``; a zero pivot is allowed when its row vanishes."""
        return _pivot_scan(self.rows, strict=False)


def _pivot_scan(rows, strict: bool) -> bool:
    m = len(rows)
    # fraction-free symmetric elimination keeps integer matrices integral
    a = [list(r) for r in rows]
    denom_ok = all(type(x) is int for r in a for x in r)
    if not denom_ok:
        a = [[Fraction(x) for x in r] for r in a]
    prev = 1
    active = list(range(m))
    while active:
        k = active[0]
        p = a[k][k]
        if p < 0:
            return False
        rest = active[1:]
        if p == 0:
            if strict:
                return False
            if any(a[k][j] != 0 for j in rest):
                return False
            active = rest
            continue
        if denom_ok:
            for i in rest:
                aik = a[i][k]
                for j in rest:
                    if j < i:
                        continue
                    v = (a[i][j] * p - aik * a[k][j]) // prev
                    a[i][j] = v
                    a[j][i] = v
            prev = p
        else:
            for i in rest:
                f = a[i][k] / p
                if f:
                    for j in rest:
                        if j < i:
                            continue
                        a[i][j] -= f * a[k][j]
                        a[j][i] = a[i][j]
        active = rest
    return True


def poly_matrix_det(rows: Sequence[Sequence[Poly]]) -> Poly:
    """Determinant of a square matrix of polynomials by Bareiss elimination.

    Every division is exact; a zero pivot triggers a row swap.
    """
    M = [list(r) for r in rows]
    m = len(M)
    if m == 0:
        raise ValueError("empty matrix")
    nvars = M[0][0].nvars
    sign = 1
    prev = None
    for k in range(m - 1):
        if not M[k][k]:
            for i in range(k + 1, m):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return Poly.zero(nvars)
        piv = M[k][k]
        for i in range(k + 1, m):
            row_i = M[i]
            aik = row_i[k]
            for j in range(k + 1, m):
                num = row_i[j] * piv
                if aik:
                    num = num - aik * M[k][j]
                row_i[j] = num.exact_divide(prev) if prev is not None else num
        prev = piv
    det = M[m - 1][m - 1]
    return det if sign == 1 else -det


class SymPencil:
    """Tuple of ``n`` symmetric ``m x m`` matrices."""

    __slots__ = ("n", "m", "matrices", "_integral")

    def __init__(self, matrices: Sequence):
        mats = tuple(x if isinstance(x, SymMatrix) else SymMatrix(x) for x in matrices)
        if not mats:
            raise ValueError("a pencil needs at least one matrix")
        m = mats[0].m
        if any(A.m != m for A in mats):
            raise ValueError("pencil matrices must share their size")
        self.n = len(mats)
        self.m = m
        self.matrices = mats
        self._integral = all(type(x) is int for M in mats for r in M.rows for x in r)

    def __eq__(self, other):
        return isinstance(other, SymPencil) and self.matrices == other.matrices

    def __hash__(self):
        return hash(self.matrices)

    def __getitem__(self, k) -> SymMatrix:
        return self.matrices[k]

    def eval(self, v: Sequence) -> SymMatrix:
        """``A(v) = sum_k v_k A_k``."""
        if len(v) != self.n:
            raise ValueError(f"point has {len(v)} coordinates, expected {self.n}")
        v = [as_rational(x) for x in v]
        m = self.m
        out = [[0] * m for _ in range(m)]
        for vk, A in zip(v, self.matrices):
            if vk == 0:
                continue
            for i in range(m):
                oi = out[i]
                ri = A.rows[i]
                for j in range(m):
                    if ri[j]:
                        oi[j] += vk * ri[j]
        return SymMatrix._raw(tuple(tuple(_canon(x) for x in r) for r in out))

    def _scaled_rows(self, v: Sequence) -> list[list[int]]:
        """``D * A(v)`` for the common denominator ``D > 0`` of ``v`` (integer pencils)."""
        fr = [Fraction(as_rational(x)) for x in v]
        D = lcm(*(x.denominator for x in fr))
        V = [int(x * D) for x in fr]
        m = self.m
        out = [[0] * m for _ in range(m)]
        for vk, A in zip(V, self.matrices):
            if vk:
                for i in range(m):
                    oi, ri = out[i], A.rows[i]
                    for j in range(m):
                        oi[j] += vk * ri[j]
        return out

    def is_psd_at(self, v: Sequence) -> bool:
        """``A(v) >= 0`` exactly; integer-only when the pencil is integral."""
        if len(v) != self.n:
            raise ValueError(f"point has {len(v)} coordinates, expected {self.n}")
        if self._integral:
            return _pivot_scan(self._scaled_rows(v), strict=False)
        return self.eval(v).is_psd()

    def is_pd_at(self, v: Sequence) -> bool:
        if len(v) != self.n:
            raise ValueError(f"point has {len(v)} coordinates, expected {self.n}")
        if self._integral:
            return _pivot_scan(self._scaled_rows(v), strict=True)
        return self.eval(v).is_positive_definite()

    def entry_poly(self, i: int, j: int) -> Poly:
        """The linear form ``A(x)[i][j]``."""
        return Poly.linear_form([A.rows[i][j] for A in self.matrices])

    def poly_matrix(self) -> list[list[Poly]]:
        return [[self.entry_poly(i, j) for j in range(self.m)] for i in range(self.m)]

    def apply(self, f: Sequence[Poly]) -> PolyVec:
        """Entries of ``A(x) f``."""
        if len(f) != self.m:
            raise ValueError(f"vector has {len(f)} entries, expected {self.m}")
        if any(p.nvars != self.n for p in f):
            raise ValueError("vector entries must have one variable per pencil matrix")
        M = self.poly_matrix()
        out = []
        for i in range(self.m):
            acc = Poly.zero(self.n)
            for j in range(self.m):
                if M[i][j] and f[j]:
                    acc = acc + M[i][j] * f[j]
            out.append(acc)
        return PolyVec(out)

    def det(self) -> Poly:
        """``det A(x)``, homogeneous of degree ``m`` (or zero)."""
        return poly_matrix_det(self.poly_matrix())

    def adjugate_row(self, i: int) -> PolyVec:
        """Row ``i`` (0-based) of ``adj A(x)``; ``A(x)`` times it is ``det * e_i``.

        By symmetry of ``A(x)`` the row equals the column.
        """
        m = self.m
        if not 0 <= i < m:
            raise IndexError(f"row index {i} out of range for size {m}")
        M = self.poly_matrix()
        if m == 1:
            return PolyVec([Poly.const(1, self.n)])
        row = []
        for j in range(m):
            # adj[i][j] = (-1)^(i+j) det(M without row j and column i)
            minor = [[M[r][c] for c in range(m) if c != i] for r in range(m) if r != j]
            d = poly_matrix_det(minor)
            row.append(d if (i + j) % 2 == 0 else -d)
        return PolyVec(row)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "matrices": [[[format_rational(x) for x in r] for r in A.rows] for A in self.matrices],
        }

    @classmethod
    def from_json(cls, obj) -> "SymPencil":
        mats = [SymMatrix([[as_rational(str(x)) for x in r] for r in A]) for A in obj["matrices"]]
        p = cls(mats)
        if "n" in obj and int(obj["n"]) != p.n:
            raise ValueError("declared n does not match the matrices")
        if "m" in obj and int(obj["m"]) != p.m:
            raise ValueError("declared m does not match the matrices")
        return p


def charpoly(M: SymMatrix) -> list[Rational]:
    """Ascending coefficients of ``det(M - t I)``."""
    m = M.m
    t = Poly.var(0, 1)
    rows = []
    for i in range(m):
        row = []
        for j in range(m):
            p = Poly.const(M.rows[i][j], 1)
            if i == j:
                p = p - t
            row.append(p)
        rows.append(row)
    det = poly_matrix_det(rows)
    coeffs = [0] * (m + 1)
    for (k,), c in det.terms.items():
        coeffs[k] = c
    return coeffs


def eigen_lower_bound(M: SymMatrix, tau) -> bool:
    """True iff every eigenvalue of ``M`` is strictly greater than ``tau``.

    Counts roots of the exact characteristic polynomial in ``(-inf, tau]``.
    """
    from hypercone.realroot import UniPoly, count_real_roots

    tau = as_rational(tau)
    u = UniPoly(charpoly(M))
    return count_real_roots(u, None, tau, hi_closed=True) == 0
