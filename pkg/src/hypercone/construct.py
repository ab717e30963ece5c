"""Search for definite determinantal representations ``A(x) f = h g``, ``A(e) > 0``.

Pipeline: :func:`assemble_constraints` linearizes the polynomial identity in
the unknown pencil entries and ``g`` coefficients; :func:`solve_feasibility`
finds a floating-point point of that subspace with ``A(e) >= I`` by Dykstra's
alternating projections; :func:`rationalize` rounds it, projects it exactly
back onto the subspace and re-checks everything in exact arithmetic.
"""
from __future__ import annotations

import csv
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import sqrt
from typing import Sequence

import numpy as np

from hypercone.linalg import rref
from hypercone.pencil import SymMatrix, SymPencil
from hypercone.ring import ZERO, NotDivisible, Poly, PolyVec, as_rational, monomials

log = logging.getLogger(__name__)


class DivisibilityPrecondition(ValueError):
    """Every entry of ``f`` is divisible by ``h``."""


class DegreeMismatch(ValueError):
    pass


class Infeasible(RuntimeError):
    """No feasible point found at the requested tolerance (not a proof of infeasibility)."""


class RationalizationFailed(RuntimeError):
    def __init__(self, stage: str, message: str = ""):
        super().__init__(f"{stage}: {message}" if message else stage)
        self.stage = stage


@dataclass
class ConstraintSystem:
    """Linear equations ``C u = 0`` in the unknowns ``u = (pencil entries, g coefficients)``.

    Pencil unknowns come first, ordered by matrix ``k`` then upper-triangle
    position ``(i, j)``, ``i <= j``; then ``g`` coefficients ordered by entry
    and monomial.  Each row is a sparse ``{column: coefficient}`` dict.
    """

    h: Poly
    e: tuple
    f: PolyVec
    n: int
    m: int
    d: int
    d_prime: int
    unknowns: list
    rows: list
    row_labels: list
    g_monomials: list

    @property
    def n_pencil(self) -> int:
        return self.n * self.m * (self.m + 1) // 2

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.unknowns)

    def dense(self) -> np.ndarray:
        C = np.zeros(self.shape)
        for r, row in enumerate(self.rows):
            for c, v in row.items():
                C[r, c] = float(v)
        return C

    def residual(self, u: Sequence) -> float:
        """Max-norm of ``C u`` in floating point."""
        return max((abs(sum(float(v) * float(u[c]) for c, v in row.items())) for row in self.rows), default=0.0)

    def exact_residual_zero(self, u: Sequence) -> bool:
        return all(sum(v * u[c] for c, v in row.items()) == 0 for row in self.rows)

    def pencil_index(self, k: int, i: int, j: int) -> int:
        if i > j:
            i, j = j, i
        per = self.m * (self.m + 1) // 2
        return k * per + i * self.m - i * (i - 1) // 2 + (j - i)

    def unpack(self, u: Sequence) -> tuple[SymPencil, PolyVec]:
        """Exact pencil and ``g`` from an exact unknown vector."""
        mats = []
        for k in range(self.n):
            M = [[0] * self.m for _ in range(self.m)]
            for i in range(self.m):
                for j in range(i, self.m):
                    M[i][j] = M[j][i] = u[self.pencil_index(k, i, j)]
            mats.append(SymMatrix(M))
        g = []
        base = self.n_pencil
        nm = len(self.g_monomials)
        for i in range(self.m):
            terms = {mono: u[base + i * nm + t] for t, mono in enumerate(self.g_monomials)}
            g.append(Poly(self.n, terms))
        return SymPencil(mats), PolyVec(g)

    def pack(self, pencil: SymPencil, g: Sequence[Poly]) -> list:
        u = [0] * len(self.unknowns)
        for k in range(self.n):
            for i in range(self.m):
                for j in range(i, self.m):
                    u[self.pencil_index(k, i, j)] = pencil[k].rows[i][j]
        base = self.n_pencil
        nm = len(self.g_monomials)
        for i in range(self.m):
            for t, mono in enumerate(self.g_monomials):
                u[base + i * nm + t] = g[i].coeff(mono)
        return u

    def export_mm(self) -> str:
        """Matrix-market style coordinate dump (1-based, exact values)."""
        lines = ["%%MatrixMarket matrix coordinate real general",
                 f"% unknowns: {len(self.unknowns)}; pencil first, then g coefficients"]
        nnz = sum(len(r) for r in self.rows)
        lines.append(f"{len(self.rows)} {len(self.unknowns)} {nnz}")
        for r, row in enumerate(self.rows):
            for c in sorted(row):
                lines.append(f"{r + 1} {c + 1} {row[c]}")
        return "\n".join(lines) + "\n"


@dataclass
class SolveOptions:
    residual_tol: float = 1e-10
    max_iter: int = 100_000
    margin: float = 1.0
    denom_bound: int = 10**6
    seed: int = 0
    # projection target is A(e) >= (margin + overshoot) I so the limit point has slack;
    # the overshoot doubles (and the Dykstra corrections reset) every `stall_iter` steps
    overshoot: float = 1e-3
    stall_iter: int = 2000
    # "pivot": keep rounded free coordinates, re-solve pivot ones (small denominators);
    # "min-norm": orthogonal projection onto the solution subspace
    projection: str = "pivot"
    trace_path: str | None = None

    def __post_init__(self):
        if not self.residual_tol > 0:
            raise ValueError("residual_tol must be positive")
        if self.denom_bound < 1:
            raise ValueError("denom_bound must be at least 1")
        if self.projection not in ("pivot", "min-norm"):
            raise ValueError(f"unknown projection {self.projection!r}")


def assemble_constraints(h: Poly, e: Sequence, f: Sequence[Poly], d_prime: int) -> ConstraintSystem:
    """Linear system whose solutions are exactly the ``(A_1..A_n, g)`` with ``A(x) f = h g``."""
    f = PolyVec(f)
    n, m = h.nvars, len(f)
    if f.nvars != n:
        raise DegreeMismatch("f and h must have the same number of variables")
    d = h.homogeneity()
    if d == ZERO:
        raise DegreeMismatch("h is the zero polynomial")
    if d_prime < d - 1:
        raise DegreeMismatch(f"d' = {d_prime} is below deg(h) - 1 = {d - 1}")
    for p in f:
        if not p.is_homogeneous(d_prime):
            raise DegreeMismatch(f"entry {p} is not homogeneous of degree {d_prime}")
    e = tuple(as_rational(x) for x in e)
    if len(e) != n:
        raise DegreeMismatch("e has the wrong dimension")
    if h.evaluate(e) == 0:
        raise ValueError("h vanishes at e")
    if all(h.divides(p) for p in f):
        raise DivisibilityPrecondition("every entry of f is divisible by h")

    unknowns = []
    for k in range(n):
        for i in range(m):
            for j in range(i, m):
                unknowns.append(("A", k, i, j))
    g_deg = d_prime - d + 1
    g_monos = monomials(n, g_deg)
    for i in range(m):
        for mono in g_monos:
            unknowns.append(("g", i, mono))

    out_monos = monomials(n, d_prime + 1)
    row_of = {(i, mono): r for r, (i, mono) in enumerate((i, mono) for i in range(m) for mono in out_monos)}
    rows: list[dict] = [dict() for _ in row_of]

    def add(entry: int, poly: Poly, col: int):
        for mono, c in poly.terms.items():
            row = rows[row_of[(entry, mono)]]
            s = row.get(col, 0) + c
            if s == 0:
                row.pop(col, None)
            else:
                row[col] = s

    xs = Poly.variables(n)
    col = 0
    for k in range(n):
        for i in range(m):
            for j in range(i, m):
                # A_k[i][j] = A_k[j][i] multiplies x_k f_j in entry i and x_k f_i in entry j
                add(i, xs[k] * f[j], col)
                if i != j:
                    add(j, xs[k] * f[i], col)
                col += 1
    for i in range(m):
        for mono in g_monos:
            add(i, -(h * Poly(n, {mono: 1})), col)
            col += 1
    labels = [(i, mono) for i in range(m) for mono in out_monos]
    return ConstraintSystem(h, e, f, n, m, d, d_prime, unknowns, rows, labels, g_monos)


# -- numeric phase ------------------------------------------------------------


@dataclass
class NumericSolution:
    u: np.ndarray
    residual: float
    lambda_min: float
    iterations: int
    trace: list = field(default_factory=list)


def _svec_scale(sys: ConstraintSystem) -> np.ndarray:
    s = np.ones(len(sys.unknowns))
    for c, lab in enumerate(sys.unknowns):
        if lab[0] == "A" and lab[2] != lab[3]:
            s[c] = sqrt(2.0)
    return s


def _block_to_matrix(vals: np.ndarray, m: int) -> np.ndarray:
    """Symmetric matrix from upper-triangle svec values."""
    M = np.zeros((m, m))
    iu = np.triu_indices(m)
    M[iu] = vals
    off = iu[0] != iu[1]
    M[iu[0][off], iu[1][off]] /= sqrt(2.0)
    M = M + np.triu(M, 1).T
    return M


def _matrix_to_block(M: np.ndarray) -> np.ndarray:
    m = M.shape[0]
    iu = np.triu_indices(m)
    vals = M[iu].copy()
    off = iu[0] != iu[1]
    vals[off] *= sqrt(2.0)
    return vals


def solve_feasibility(sys: ConstraintSystem, e: Sequence, opts: SolveOptions | None = None,
                      extra_rows: Sequence | None = None) -> NumericSolution:
    """Floating-point point with ``C u ~ 0`` and ``lambda_min(A(e)) >= margin - tol``.

    Dykstra's alternating projections between the solution subspace (via an
    orthonormal null-space basis) and ``{A(e) >= (margin + overshoot) I}``
    (via an eigendecomposition of the ``m x m`` block ``A(e)``).  Work is
    done in svec coordinates so both projections are Euclidean.
    ``extra_rows`` are appended as dense ``(coefficients, rhs)`` equations.
    """
    opts = opts or SolveOptions()
    e = np.array([float(x) for x in e])
    m, n = sys.m, sys.n
    s = _svec_scale(sys)
    C = sys.dense() / s
    rhs = np.zeros(C.shape[0])
    if extra_rows:
        C = np.vstack([C] + [np.asarray(r, float)[None, :] / s for r, _ in extra_rows])
        rhs = np.concatenate([rhs, [float(b) for _, b in extra_rows]])
    # affine set {x : C x = rhs}
    U, S, Vt = np.linalg.svd(C, full_matrices=True)
    tol_rank = max(C.shape) * np.finfo(float).eps * (S[0] if S.size else 1.0)
    r = int((S > tol_rank).sum())
    N = Vt[r:].T
    x_part = Vt[:r].T @ ((U[:, :r].T @ rhs) / S[:r]) if r else np.zeros(C.shape[1])
    if np.linalg.norm(C @ x_part - rhs) > 1e-8 * (1 + np.linalg.norm(rhs)):
        raise Infeasible("linear equations are inconsistent")
    if N.shape[1] == 0 and r == C.shape[1]:
        pass

    def proj_affine(x):
        return x_part + N @ (N.T @ (x - x_part))

    per = m * (m + 1) // 2
    e2 = float(e @ e)
    overshoot = opts.overshoot
    target = opts.margin + overshoot

    def Ae(x):
        return sum(e[k] * x[k * per:(k + 1) * per] for k in range(n) if e[k] != 0)

    def proj_psd(x):
        Y = _block_to_matrix(Ae(x), m)
        w, V = np.linalg.eigh(Y)
        Z = (V * np.maximum(w, target)) @ V.T
        delta = _matrix_to_block(Z - Y)
        out = x.copy()
        for k in range(n):
            if e[k] != 0:
                out[k * per:(k + 1) * per] += e[k] * delta / e2
        return out

    rng = np.random.default_rng(opts.seed)
    x = rng.standard_normal(C.shape[1])
    p = np.zeros_like(x)
    q = np.zeros_like(x)
    trace = []
    it = 0
    y = proj_affine(x)
    lam = np.linalg.eigvalsh(_block_to_matrix(Ae(y), m))[0]
    res = float(np.abs(C @ y - rhs).max()) if C.size else 0.0
    while it < opts.max_iter:
        if res <= opts.residual_tol and lam >= opts.margin - opts.residual_tol:
            break
        it += 1
        if it % opts.stall_iter == 0:
            # the constraints are homogeneous, so a deeper target is equally valid
            overshoot *= 2
            target = opts.margin + overshoot
            p[:] = 0
            q[:] = 0
        y = proj_affine(x + p)
        p = x + p - y
        x_new = proj_psd(y + q)
        q = y + q - x_new
        x = x_new
        lam = np.linalg.eigvalsh(_block_to_matrix(Ae(y), m))[0]
        res = float(np.abs(C @ y - rhs).max()) if C.size else 0.0
        if opts.trace_path is not None:
            trace.append((it, res, float(lam)))
    if opts.trace_path is not None:
        with open(opts.trace_path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["iter", "residual", "lambda_min"])
            w.writerows(trace)
    if not (res <= opts.residual_tol and lam >= opts.margin - opts.residual_tol):
        raise Infeasible(f"no feasible point after {it} iterations (residual {res:.3g}, lambda_min {lam:.6g})")
    log.info("feasible point after %d iterations, residual %.3g, lambda_min %.6g", it, res, lam)
    return NumericSolution(u=y / s, residual=res, lambda_min=float(lam), iterations=it, trace=trace)


# -- exact phase --------------------------------------------------------------


def _exact_rref(sys: ConstraintSystem):
    """Reduced echelon form of ``C``, pivot and free columns (cached on the system)."""
    cached = getattr(sys, "_rref", None)
    if cached is None:
        n_unk = len(sys.unknowns)
        dense = [[row.get(c, 0) for c in range(n_unk)] for row in sys.rows if row]
        R, piv = rref(dense) if dense else ([], [])
        pivset = set(piv)
        free = [c for c in range(n_unk) if c not in pivset]
        cached = sys._rref = (R, piv, free)
    return cached


def project_pivot(sys: ConstraintSystem, u: Sequence) -> list:
    """Keep the free coordinates of ``u`` and solve exactly for the pivot ones."""
    R, piv, free = _exact_rref(sys)
    out = [as_rational(x) for x in u]
    for row, c in zip(R, piv):
        out[c] = as_rational(-sum(row[f] * Fraction(out[f]) for f in free if row[f]))
    return out


def project_exact(sys: ConstraintSystem, u: Sequence) -> list:
    """Minimum-norm exact correction of ``u`` onto ``{C u = 0}``.

    The closest point is the orthogonal projection ``N (N^T N)^{-1} N^T u``
    onto the null space, ``N`` the exact basis read off the echelon form.
    """
    u = [Fraction(x) for x in u]
    if sys.exact_residual_zero(u):
        return [as_rational(x) for x in u]
    R, piv, free = _exact_rref(sys)
    if not free:
        return [0] * len(u)
    N = []
    for f in free:
        b = [Fraction(0)] * len(u)
        b[f] = Fraction(1)
        for row, c in zip(R, piv):
            b[c] = -row[f]
        N.append(b)
    supp = [[c for c, x in enumerate(b) if x] for b in N]
    G = [[sum(a[c] * b[c] for c in sa if b[c]) for b in N] for a, sa in zip(N, supp)]
    rhs = [sum(a[c] * u[c] for c in sa) for a, sa in zip(N, supp)]
    y = _solve_spd(G, rhs)
    out = [Fraction(0)] * len(u)
    for yk, b, sb in zip(y, N, supp):
        if yk:
            for c in sb:
                out[c] += yk * b[c]
    return [as_rational(x) for x in out]


def _solve_spd(G, b):
    """Exact solve of a symmetric positive definite system by LDL^T."""
    n = len(G)
    A = [[Fraction(x) for x in row] for row in G]
    L = [[Fraction(0)] * n for _ in range(n)]
    D = [Fraction(0)] * n
    for j in range(n):
        s = A[j][j] - sum(L[j][k] * L[j][k] * D[k] for k in range(j) if L[j][k])
        D[j] = s
        for i in range(j + 1, n):
            t = A[i][j] - sum(L[i][k] * L[j][k] * D[k] for k in range(j) if L[i][k] and L[j][k])
            L[i][j] = t / s
    z = [Fraction(0)] * n
    for i in range(n):
        z[i] = Fraction(b[i]) - sum(L[i][k] * z[k] for k in range(i) if L[i][k])
    for i in range(n):
        z[i] /= D[i]
    x = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        x[i] = z[i] - sum(L[k][i] * x[k] for k in range(i + 1, n) if L[k][i])
    return x


@dataclass
class ExactSolution:
    pencil: SymPencil
    g: PolyVec
    denom_bound: int
    degenerate: bool


def rationalize(sol, sys: ConstraintSystem, e: Sequence, opts: SolveOptions | None = None) -> ExactSolution:
    """Round, project exactly onto the solution subspace, verify exactly.

    ``sol`` is a :class:`NumericSolution` or a plain unknown vector.  On a
    definiteness failure the denominator bound grows tenfold, up to three
    retries.
    """
    opts = opts or SolveOptions()
    u_num = sol.u if isinstance(sol, NumericSolution) else sol
    bound = opts.denom_bound
    last_error = None
    for attempt in range(4):
        try:
            u_round = []
            for x in u_num:
                if isinstance(x, (int, Fraction)):
                    u_round.append(as_rational(x))
                else:
                    u_round.append(as_rational(Fraction(float(x)).limit_denominator(bound)))
        except (OverflowError, ValueError) as exc:
            raise RationalizationFailed("rounding", str(exc)) from exc
        u = project_exact(sys, u_round) if opts.projection == "min-norm" else project_pivot(sys, u_round)
        if not sys.exact_residual_zero(u):
            raise RationalizationFailed("projection", "exact residual is nonzero")
        pencil, g = sys.unpack(u)
        applied = pencil.apply(sys.f)
        if any(a != sys.h * gi for a, gi in zip(applied, g)):
            raise RationalizationFailed("projection", "A(x) f != h g after projection")
        if pencil.eval(e).is_positive_definite():
            degenerate = all(p.is_zero() for p in g)
            if degenerate:
                log.warning("degenerate solution: g = 0")
            return ExactSolution(pencil, g, bound, degenerate)
        last_error = f"A(e) not positive definite at denominator bound {bound}"
        bound *= 10
    raise RationalizationFailed("definiteness", last_error)


# -- identities from the d' = d - 1 case -------------------------------------


def derived_p(f: Sequence[Poly], g: Sequence[Poly]) -> Poly:
    """``p = sum g_i f_i`` for a constant vector ``g``."""
    for gi in g:
        if not (gi.is_zero() or gi.homogeneity() == 0):
            raise ValueError("g must be a constant vector")
    consts = [gi.coeff((0,) * gi.nvars) for gi in g]
    p = PolyVec(f).dot(consts)
    if p.is_zero():
        log.warning("derived p is zero (degenerate g)")
    return p


def check_mixed_identity(h: Poly, p: Poly, f: Sequence[Poly], pencil: SymPencil) -> list[bool]:
    """For each variable ``i``: ``dh/dx_i * p - h * dp/dx_i == f^T A_i f``."""
    out = []
    for i in range(h.nvars):
        lhs = h.derivative(i) * p - h * p.derivative(i)
        A = pencil[i]
        rhs = Poly.zero(h.nvars)
        for a in range(pencil.m):
            for b in range(pencil.m):
                c = A.rows[a][b]
                if c and f[a] and f[b]:
                    rhs = rhs + (f[a] * f[b]).scale(c)
        out.append(lhs == rhs)
    return out


@dataclass
class SOSCertificate:
    """``f^T M f = sum_i weights[i] * squares[i]**2`` with positive weights."""

    weights: list
    squares: list

    def expand(self) -> Poly:
        n = self.squares[0].nvars
        out = Poly.zero(n)
        for w, s in zip(self.weights, self.squares):
            out = out + (s * s).scale(w)
        return out


def sos_witness_check(f: Sequence[Poly], M: SymMatrix) -> tuple[bool, SOSCertificate]:
    """Weighted sum-of-squares form of ``f^T M f`` from ``M = L D L^T``.

    Returns ``(ok, certificate)`` where ``ok`` means the re-expanded
    certificate equals ``f^T M f`` exactly.
    """
    if not M.is_positive_definite():
        raise ValueError("matrix is not positive definite")
    L, D = M.ldl()
    m = M.m
    squares = []
    for i in range(m):
        # (L^T f)_i = sum_j L[j][i] f_j
        s = Poly.zero(f[0].nvars)
        for j in range(i, m):
            if L[j][i]:
                s = s + f[j].scale(L[j][i])
        squares.append(s)
    cert = SOSCertificate([as_rational(d) for d in D], squares)
    quad = Poly.zero(f[0].nvars)
    for a in range(m):
        for b in range(m):
            if M.rows[a][b]:
                quad = quad + (f[a] * f[b]).scale(M.rows[a][b])
    return cert.expand() == quad, cert


def construct(h: Poly, e: Sequence, f: Sequence[Poly], d_prime: int,
              opts: SolveOptions | None = None) -> tuple[ConstraintSystem, NumericSolution, ExactSolution]:
    """Assemble, solve and rationalize in one call."""
    opts = opts or SolveOptions()
    sys = assemble_constraints(h, e, f, d_prime)
    num = solve_feasibility(sys, e, opts)
    exact = rationalize(num, sys, e, opts)
    return sys, num, exact
