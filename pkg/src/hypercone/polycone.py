"""Finitely generated polyhedral cones: dual generators by double description.

Rays and linear forms are stored as primitive integer vectors.  Both are
oriented objects, so canonicalization divides by the *positive* content
only; the sign of a ray or form is never flipped.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Sequence

from hypercone.linalg import dot, nullspace, primitive, rank, solve
from hypercone.ring import as_rational

MAX_DIM = 12


class DimensionError(ValueError):
    pass


@dataclass(frozen=True)
class LinForm:
    """Linear functional ``v -> sum(coeffs[i] * v[i])``."""

    coeffs: tuple

    def __call__(self, v: Sequence):
        if len(v) != len(self.coeffs):
            raise DimensionError("dimension mismatch")
        return dot(self.coeffs, v)

    @property
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coeffs]


def canonicalize_form(form) -> LinForm:
    """Primitive integer coefficients; the sign is kept (forms are oriented).

    ``(2/3, 4/3) -> (1, 2)``, ``(-2, -4) -> (-1, -2)``, zero stays zero.
    """
    coeffs = form.coeffs if isinstance(form, LinForm) else form
    return LinForm(primitive([as_rational(c) for c in coeffs]))


class RayCone:
    """Cone generated by finitely many nonzero rays in ``Q^dim``."""

    def __init__(self, rays: Sequence[Sequence], dim: int | None = None):
        canon = []
        for r in rays:
            v = primitive([as_rational(x) for x in r])
            if not any(v):
                raise ValueError("zero ray")
            canon.append(v)
        if dim is None:
            if not canon:
                raise ValueError("dimension of an empty cone must be given")
            dim = len(canon[0])
        if any(len(v) != dim for v in canon):
            raise DimensionError("rays must share their dimension")
        self.dim = dim
        self.rays = tuple(canon)
        self._dual = None

    def __len__(self):
        return len(self.rays)

    def dual(self) -> list[LinForm]:
        if self._dual is None:
            self._dual = dual_cone(self)
        return self._dual

    def member(self, v: Sequence) -> bool:
        """Exact test ``l(v) >= 0`` for every dual generator."""
        if len(v) != self.dim:
            raise DimensionError(f"point has {len(v)} coordinates, expected {self.dim}")
        v = [as_rational(x) for x in v]
        return all(form(v) >= 0 for form in self.dual())

    def to_json(self) -> dict:
        return {"dim": self.dim, "rays": [[str(x) for x in r] for r in self.rays]}

    @classmethod
    def from_json(cls, obj) -> "RayCone":
        return cls([[as_rational(str(x)) for x in r] for r in obj["rays"]], dim=int(obj["dim"]))


def member(C: RayCone, v: Sequence) -> bool:
    return C.member(v)


def _independent_subset(rows: list, r: int) -> list[int]:
    chosen: list[int] = []
    for i in range(len(rows)):
        if rank([rows[j] for j in chosen + [i]]) == len(chosen) + 1:
            chosen.append(i)
            if len(chosen) == r:
                break
    return chosen


def _dd_extreme_rays(A: list[tuple[int, ...]], r: int, n: int) -> list[tuple[int, ...]]:
    """Extreme rays of ``{x in rowspace(A) : A x >= 0}`` (a pointed cone of dim ``r``)."""
    S = _independent_subset(A, r)
    AS = [[Fraction(x) for x in A[i]] for i in S]
    # columns of AS^T (AS AS^T)^{-1}: g_j in rowspace with AS g_j = unit_j
    gram = [[dot(a, b) for b in AS] for a in AS]
    gens = []
    for j in range(r):
        y = solve(gram, [Fraction(int(i == j)) for i in range(r)])
        g = [sum(y[i] * AS[i][c] for i in range(r)) for c in range(n)]
        gens.append(primitive(g))
    processed = list(S)

    def zeros(g):
        return frozenset(i for i in processed if dot(A[i], g) == 0)

    for idx in range(len(A)):
        if idx in S:
            continue
        a = A[idx]
        vals = [dot(a, g) for g in gens]
        pos = [g for g, s in zip(gens, vals) if s > 0]
        neg = [g for g, s in zip(gens, vals) if s < 0]
        zer = [g for g, s in zip(gens, vals) if s == 0]
        if not neg:
            processed.append(idx)
            continue
        zsets = {g: zeros(g) for g in pos + neg}
        new = []
        for p, q in product(pos, neg):
            common = zsets[p] & zsets[q]
            if len(common) < r - 2:
                continue
            if r > 2 and rank([A[i] for i in common]) != r - 2:
                continue
            ap, aq = dot(a, p), dot(a, q)
            new.append(primitive([ap * qi - aq * pi for pi, qi in zip(p, q)]))
        gens = list(dict.fromkeys(pos + zer + new))
        processed.append(idx)
    return gens


def dual_cone(C: RayCone) -> list[LinForm]:
    """Minimal generators of ``{l : l(r) >= 0 for every ray r}``, sorted.

    Incremental double description on the rows ``r . l >= 0``.  A nontrivial
    lineality space ``{l : l(r) = 0 for all r}`` contributes ``+-`` a basis.
    """
    n = C.dim
    if n > MAX_DIM:
        raise DimensionError(f"dimension {n} exceeds the bound {MAX_DIM}")
    A = sorted(set(C.rays))
    r = rank(A) if A else 0
    forms: list[tuple[int, ...]] = []
    lineality = nullspace(A, n) if A else nullspace([], n)
    for b in lineality:
        v = primitive(b)
        forms.append(v)
        forms.append(tuple(-x for x in v))
    if r > 0:
        if r == 1:
            # the row space is a line; keep whichever orientations satisfy every row
            u = primitive(A[0])
            for cand in (u, tuple(-x for x in u)):
                if all(dot(row, cand) >= 0 for row in A):
                    forms.append(cand)
        else:
            forms.extend(_dd_extreme_rays(A, r, n))
    uniq = sorted(set(forms))
    return [LinForm(f) for f in uniq]


def dumps_forms(forms: Sequence[LinForm], dim: int) -> str:
    return json.dumps({"dim": dim, "rays": [f.to_json() for f in forms]}, indent=1)
