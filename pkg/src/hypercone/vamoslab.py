"""The specialized Vamos example: bundled data and its verification pipeline.

:func:`verify_certificate` runs ten checks in order.  Steps 1-5 and 7 are
exact identities, 6, 8 and 9 are exact tests on sampled points (evidence,
not proof), and step 10 looks for numeric supporting-hyperplane witnesses
for the dual generators of ``P``.
"""
from __future__ import annotations

import json
import logging
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np
from scipy.linalg import eigh
from scipy.optimize import least_squares

from hypercone import vamos_data as data
from hypercone.construct import check_mixed_identity, derived_p
from hypercone.hyperbolic import (
    BOUNDARY_BITS,
    HyperbolicInstance,
    _chunked,
    _cone_point,
    _normalized,
    check_hyperbolic_sampled,
    cone_inclusion_sampled,
    random_direction,
    sample_cone_points,
    sample_rng,
)
from hypercone.pencil import SymMatrix, SymPencil, eigen_lower_bound
from hypercone.polycone import LinForm, RayCone, dual_cone
from hypercone.realroot import UniPoly, nonneg_coeff_shortcut
from hypercone.ring import NotDivisible, Poly, PolyVec, as_rational, format_rational

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class VamosBundle:
    h4: Poly
    e: tuple
    f: PolyVec
    pencil: SymPencil
    q: Poly
    P: RayCone
    g: tuple = data.G_VECTOR
    det_scalar: int = data.DET_SCALAR
    eigen_margin: Fraction = Fraction(*data.EIGEN_MARGIN)

    def replace(self, **kw) -> "VamosBundle":
        fields = dict(h4=self.h4, e=self.e, f=self.f, pencil=self.pencil, q=self.q, P=self.P,
                      g=self.g, det_scalar=self.det_scalar, eigen_margin=self.eigen_margin)
        fields.update(kw)
        return VamosBundle(**fields)


def _sum_terms(n: int, terms) -> Poly:
    p = Poly.zero(n)
    for c, e in terms:
        p = p + Poly(n, {e: c})
    return p


def vamos_h4() -> Poly:
    square = Poly(4, {data.H4_SQUARE_TERM[1]: data.H4_SQUARE_TERM[0]})
    e3 = _sum_terms(4, [(1, e) for e in data.H4_FACTOR_E3])
    return square + (Poly.linear_form(data.H4_FACTOR_SUM) * e3).scale(4)


@lru_cache(maxsize=1)
def builtin_vamos() -> VamosBundle:
    f = PolyVec(_sum_terms(4, entry) for entry in data.F_ENTRIES)
    pencil = SymPencil([SymMatrix([list(r) for r in M]) for M in data.PENCIL])
    q = _sum_terms(4, data.Q_TERMS)
    return VamosBundle(
        h4=vamos_h4(),
        e=tuple(data.E_POINT),
        f=f,
        pencil=pencil,
        q=q,
        P=RayCone(data.P_GENERATORS),
    )


# -- reports ------------------------------------------------------------------


@dataclass
class CertStep:
    name: str
    verdict: str  # "pass", "fail" or "skipped"
    evidence: dict
    level: str  # "exact", "sampled" or "best-effort"
    seconds: float = 0.0
    mandatory: bool = True

    def to_json(self) -> dict:
        return {"name": self.name, "verdict": self.verdict, "level": self.level,
                "mandatory": self.mandatory, "seconds": round(self.seconds, 3),
                "evidence": self.evidence}


@dataclass
class CertReport:
    steps: list = field(default_factory=list)
    samples: int = 0
    seed: int = 0

    @property
    def overall(self) -> str:
        ok = all(s.verdict == "pass" for s in self.steps if s.mandatory)
        return "pass" if ok and self.steps else "fail"

    @property
    def passed(self) -> bool:
        return self.overall == "pass"

    def step(self, name: str) -> CertStep:
        for s in self.steps:
            if s.name == name:
                return s
        raise KeyError(name)

    def to_json(self, timings: bool = True) -> dict:
        steps = [s.to_json() for s in self.steps]
        if not timings:
            for s in steps:
                s.pop("seconds")
        return {"overall": self.overall, "samples": self.samples, "seed": self.seed, "steps": steps}

    def dumps(self, timings: bool = True) -> str:
        return json.dumps(self.to_json(timings), indent=1)

    def text(self) -> str:
        lines = [f"samples={self.samples} seed={self.seed}"]
        for i, s in enumerate(self.steps, 1):
            tag = "" if s.mandatory else " (optional)"
            lines.append(f"{i:2d}. [{s.verdict.upper():7s}] {s.name} ({s.level}, {s.seconds:.2f}s){tag}")
            for k, v in s.evidence.items():
                lines.append(f"      {k}: {v}")
        lines.append(f"overall: {self.overall.upper()}")
        return "\n".join(lines)


# -- exact steps --------------------------------------------------------------

_DET_CACHE: dict = {}


def pencil_det(pencil: SymPencil) -> Poly:
    """Memoized ``det A(x)``."""
    d = _DET_CACHE.get(pencil)
    if d is None:
        if len(_DET_CACHE) > 8:
            _DET_CACHE.clear()
        d = _DET_CACHE[pencil] = pencil.det()
    return d


def step_det_identity(b: VamosBundle) -> tuple[bool, dict]:
    residual = pencil_det(b.pencil) - (b.q * b.h4).scale(b.det_scalar)
    ev = {"residual_terms": len(residual)}
    if residual:
        ev["residual_leading"] = str(Poly(residual.nvars, dict([residual.leading_term()])))
    return not residual, ev


def step_eigen_margin(b: VamosBundle) -> tuple[bool, dict]:
    ok = eigen_lower_bound(b.pencil.eval(b.e), b.eigen_margin)
    return ok, {"bound": format_rational(b.eigen_margin), "all_eigenvalues_above": ok}


def recover_g(b: VamosBundle) -> list | None:
    """Constant vector ``g`` with ``A(x) f = h4 g``, or ``None``."""
    g = []
    for entry in b.pencil.apply(b.f):
        try:
            gi = entry.exact_divide(b.h4)
        except NotDivisible:
            return None
        if not (gi.is_zero() or gi.homogeneity() == 0):
            return None
        g.append(gi.coeff((0,) * b.h4.nvars))
    return g


def step_condition_one(b: VamosBundle) -> tuple[bool, dict]:
    g = recover_g(b)
    if g is None:
        return False, {"g": "A(x) f is not h4 times a constant vector"}
    ok = tuple(g) == tuple(b.g)
    return ok, {"g": [format_rational(x) for x in g], "matches_bundled_g": ok}


def step_mixed_identity(b: VamosBundle) -> tuple[bool, dict]:
    g = recover_g(b)
    if g is None:
        return False, {"reason": "no constant g"}
    p = derived_p(b.f, [Poly.const(x, 4) for x in g])
    res = check_mixed_identity(b.h4, p, b.f, b.pencil)
    return all(res), {"per_variable": res, "p_degree": p.homogeneity() if p else None}


def step_generators_in_q_cone(b: VamosBundle) -> tuple[bool, dict]:
    bad = []
    for k, w in enumerate(b.P.rays):
        try:
            ok = nonneg_coeff_shortcut(UniPoly(b.q.restrict_to_line(b.e, w))) is True
        except ValueError:
            ok = False
        if not ok:
            bad.append(k)
    return not bad, {"generators": len(b.P.rays), "inconclusive": bad}


EXACT_STEPS: list[tuple[str, Callable]] = [
    ("det_identity", step_det_identity),
    ("eigen_margin", step_eigen_margin),
    ("condition_one", step_condition_one),
    ("mixed_identity", step_mixed_identity),
    ("generators_in_q_cone", step_generators_in_q_cone),
]

# cheapest first, for mutation screening
_SCREEN_ORDER = ("condition_one", "generators_in_q_cone", "eigen_margin", "mixed_identity", "det_identity")


def exact_steps_fail(b: VamosBundle) -> str | None:
    """Name of the first failing exact step (in order of cost), or ``None``."""
    funcs = dict(EXACT_STEPS)
    for name in _SCREEN_ORDER:
        ok, _ = funcs[name](b)
        if not ok:
            return name
    return None


# -- spectrahedron sampling ---------------------------------------------------


def _dyadic_up(x: float, bits: int = BOUNDARY_BITS) -> Fraction:
    return Fraction(int(np.ceil(x * (1 << bits))), 1 << bits)


def _spectrahedron_point(pencil: SymPencil, e, rng: random.Random, interior: bool) -> tuple:
    """Exact point ``w + mu e`` with ``A(w + mu e)`` PSD (checked exactly)."""
    stack = np.array([M.to_float() for M in pencil.matrices])
    Ae = np.tensordot(np.array([float(x) for x in e]), stack, axes=1)
    n = len(e)
    w = _normalized(random_direction(rng, n))
    Aw = np.tensordot(np.array([float(x) for x in w]), stack, axes=1)
    lam = eigh(Aw, Ae, eigvals_only=True)
    mu = _dyadic_up(-lam[0])
    if interior:
        spread = float(lam[-1] - lam[0])
        mu += Fraction(spread / 16).limit_denominator(1 << BOUNDARY_BITS) if spread > 0 else Fraction(1, 16)
    step = Fraction(1, 1 << BOUNDARY_BITS)
    while True:
        v = tuple(as_rational(Fraction(wi) + mu * Fraction(ei)) for wi, ei in zip(w, e))
        if pencil.is_psd_at(v):
            return v
        mu += step
        step *= 2


def _spectra_chunk(b, seed, start, stop) -> list:
    H4 = HyperbolicInstance(b.h4, b.e)
    Hq = HyperbolicInstance(b.q, b.e)
    bad = []
    for i in range(start, stop):
        v = _spectrahedron_point(b.pencil, b.e, sample_rng(seed, i, stream=4), interior=(i % 2 == 0))
        if not (H4.in_cone(v) and Hq.in_cone(v)):
            bad.append(v)
    return bad


def _cone_psd_chunk(b, seed, start, stop) -> list:
    H4 = HyperbolicInstance(b.h4, b.e)
    Hq = HyperbolicInstance(b.q, b.e)
    bad = []
    for i in range(start, stop):
        v = _cone_point(H4, sample_rng(seed, i, stream=5), interior=(i % 2 == 0), extra=(Hq,))
        if not (H4.in_cone(v) and Hq.in_cone(v)):
            raise AssertionError(f"sampled point {v} failed the exact cone test")
        if not b.pencil.is_psd_at(v):
            bad.append(v)
    return bad


def spectrahedron_agreement(b: VamosBundle, N: int, seed: int = 0) -> dict:
    """Two-sided sampled comparison of ``{A(v) >= 0}`` with ``C_h4 & C_q``."""
    bad_spec = _chunked(_spectra_chunk, (b, seed), N)
    bad_cone = _chunked(_cone_psd_chunk, (b, seed), N)
    return {
        "spectrahedron_points": N,
        "spectrahedron_failures": [[format_rational(x) for x in v] for v in bad_spec],
        "cone_points": N,
        "cone_failures": [[format_rational(x) for x in v] for v in bad_cone],
    }


# -- supporting hyperplanes ---------------------------------------------------


class NotFound(Exception):
    """No certificate found within the search budget (not a refutation)."""


@dataclass
class SupportCertificate:
    form: LinForm
    h_tilde: Poly
    v: tuple
    lam: object
    label: str = ""


@dataclass
class SupportResult:
    kind: str  # "ExactPass", "NumericPass" or "Fail"
    residuals: dict = field(default_factory=dict)
    reason: str = ""

    def __bool__(self):
        return self.kind != "Fail"


def _is_exact(x) -> bool:
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


def support_certificate(cert: SupportCertificate, e: Sequence, tol: float = 1e-8,
                        smooth_tol: float = 1e-3) -> SupportResult:
    """Check that ``v`` is a smooth boundary point of ``C_h~(e)`` with tangent ``l``.

    ExactPass certifies ``l >= 0`` on ``C_h~(e)``.  NumericPass means the
    same checks hold up to ``tol`` (relative to the gradient size), with
    cone membership tested exactly at ``v + sqrt(tol) e``; a floating-point
    ``v`` also needs ``|grad h~(v)| >= smooth_tol * max|coeff| * |v|^(d-1)``
    so that points converging to a singular point are rejected.
    """
    ell = [as_rational(c) for c in cert.form.coeffs]
    h = cert.h_tilde
    if not any(ell):
        return SupportResult("Fail", reason="zero linear form")
    if sum(a * as_rational(b) for a, b in zip(ell, e)) <= 0:
        return SupportResult("Fail", reason="l(e) <= 0")
    H = HyperbolicInstance(h, e)
    if all(_is_exact(x) for x in cert.v) and _is_exact(cert.lam):
        v = tuple(cert.v)
        grad = [g.evaluate(v) for g in h.gradient()]
        if not any(grad):
            return SupportResult("Fail", reason="zero gradient (singular point)")
        if h.evaluate(v) != 0:
            return SupportResult("Fail", reason="h~(v) != 0")
        if cert.lam <= 0:
            return SupportResult("Fail", reason="lambda <= 0")
        if any(gi != cert.lam * li for gi, li in zip(grad, ell)):
            return SupportResult("Fail", reason="gradient not lambda * l")
        if not H.in_cone(v):
            return SupportResult("Fail", reason="v not in the cone")
        return SupportResult("ExactPass", {"h": 0, "gradient": 0})
    v = np.array([float(x) for x in cert.v])
    lam = float(cert.lam)
    grad = np.array([g.evaluate_float(v) for g in h.gradient()])
    gnorm = float(np.linalg.norm(grad))
    if gnorm <= tol:
        return SupportResult("Fail", reason="zero gradient (singular point)")
    size = max(abs(float(c)) for c in h.terms.values()) * float(np.linalg.norm(v)) ** (h.total_degree() - 1)
    if gnorm < smooth_tol * size:
        return SupportResult("Fail", {"gradient_norm": gnorm}, reason="near a singular point")
    if lam <= 0:
        return SupportResult("Fail", reason="lambda <= 0")
    r_h = abs(h.evaluate_float(v)) / gnorm
    r_g = float(np.linalg.norm(grad - lam * np.array([float(x) for x in ell]))) / gnorm
    res = {"h": r_h, "gradient": r_g}
    if r_h > tol or r_g > tol:
        return SupportResult("Fail", res, reason="residuals above tolerance")
    delta = Fraction(int(np.sqrt(tol) * 2**30), 2**30)
    shifted = tuple(as_rational(Fraction(float(x)) + delta * Fraction(ei)) for x, ei in zip(v, e))
    if not H.in_cone(shifted):
        return SupportResult("Fail", res, reason="v not in the cone")
    return SupportResult("NumericPass", res)


def _try_exact(cert: SupportCertificate, e, bounds=(1, 10, 100, 1000)) -> SupportCertificate | None:
    """Round a numeric tangency point to small rationals; keep it if the exact check passes."""
    top = max(abs(float(x)) for x in cert.v)
    for bound in bounds:
        v = tuple(as_rational(Fraction(float(x) / top).limit_denominator(bound)) for x in cert.v)
        grad = [g.evaluate(v) for g in cert.h_tilde.gradient()]
        ell = cert.form.coeffs
        k = next((i for i, c in enumerate(ell) if c), None)
        if not grad[k]:
            continue
        lam = as_rational(Fraction(grad[k]) / ell[k])
        cand = SupportCertificate(cert.form, cert.h_tilde, v, lam, cert.label)
        if support_certificate(cand, e).kind == "ExactPass":
            return cand
    return None


def _newton(h: Poly, ell: np.ndarray, e: np.ndarray, v0: np.ndarray):
    grads = h.gradient()
    hess = [[gi.derivative(j) for j in range(h.nvars)] for gi in grads]
    n = h.nvars
    scale = float(np.linalg.norm(ell))

    def F(z):
        v, lam = z[:n], z[n]
        g = np.array([gi.evaluate_float(v) for gi in grads])
        return np.concatenate([[h.evaluate_float(v)], g - lam * ell, [e @ v - 1.0]])

    def J(z):
        v = z[:n]
        out = np.zeros((n + 2, n + 1))
        out[0, :n] = [gi.evaluate_float(v) for gi in grads]
        out[1:n + 1, :n] = [[hij.evaluate_float(v) for hij in row] for row in hess]
        out[1:n + 1, n] = -ell
        out[n + 1, :n] = e
        return out

    g0 = np.array([gi.evaluate_float(v0) for gi in grads])
    lam0 = float(g0 @ ell) / scale**2
    sol = least_squares(F, np.concatenate([v0, [lam0]]), jac=J, method="lm", xtol=1e-15, ftol=1e-15, gtol=1e-15,
                        max_nfev=200)
    return sol.x[:n], sol.x[n]


def support_candidates(b: VamosBundle, seed: int = 0, directions: int = 3) -> list[tuple[str, Poly]]:
    """Candidate polynomials whose cones contain ``C_h4(e)``."""
    cands = [("h4", b.h4), ("D_e h4", b.h4.directional_derivative(b.e))]
    H4 = HyperbolicInstance(b.h4, b.e)
    for k, a in enumerate(sample_cone_points(H4, directions, seed=seed, mode="interior")):
        cands.append((f"D_a h4 (a #{k})", b.h4.directional_derivative(a)))
    g = recover_g(b)
    if g is not None:
        p = derived_p(b.f, [Poly.const(x, 4) for x in g])
        if p:
            cands.append(("p", p))
            cands.append(("D_e p", p.directional_derivative(b.e)))
    return cands


def support_search(form: LinForm, candidates: Sequence[tuple[str, Poly]], e: Sequence, seed: int = 0,
                   starts: int = 24, tol: float = 1e-8) -> tuple[SupportCertificate, SupportResult]:
    """Newton search for a smooth boundary point where ``form`` is a tangent hyperplane.

    Starting points are near-boundary samples of each candidate's cone.
    """
    if form.is_zero:
        raise ValueError("zero linear form")
    ell = np.array([float(c) for c in form.coeffs])
    ef = np.array([float(x) for x in e])
    for label, h in candidates:
        if h.homogeneity() == 0 or h.evaluate(e) == 0:
            continue
        H = HyperbolicInstance(h, e) if h.evaluate(e) > 0 else HyperbolicInstance(-h, e)
        hp = H.h
        try:
            starts_pts = sample_cone_points(H, starts, seed=seed, mode="near-boundary")
        except Exception:  # candidate not hyperbolic along some sampled direction
            continue
        for v0 in starts_pts:
            v0 = np.array([float(x) for x in v0])
            s = ef @ v0
            if abs(s) < 1e-9:
                continue
            v, lam = _newton(hp, ell, ef, v0 / s)
            cert = SupportCertificate(form, hp, tuple(float(x) for x in v), float(lam), label)
            res = support_certificate(cert, e, tol)
            if res:
                exact = _try_exact(cert, e)
                if exact is not None:
                    return exact, support_certificate(exact, e)
                return cert, res
    raise NotFound(f"no tangency point found for {form.coeffs}")


# -- the pipeline -------------------------------------------------------------


def _timed(report: CertReport, name: str, level: str, fn: Callable[[], tuple[bool, dict]],
           mandatory: bool = True):
    t0 = time.perf_counter()
    try:
        ok, ev = fn()
    except Exception as exc:  # a crashing step is a failing step
        log.exception("step %s raised", name)
        ok, ev = False, {"error": f"{type(exc).__name__}: {exc}"}
    verdict = ok if isinstance(ok, str) else ("pass" if ok else "fail")
    report.steps.append(CertStep(name, verdict, ev, level, time.perf_counter() - t0, mandatory))
    log.info("step %s: %s", name, verdict)


def verify_certificate(samples: int = 10_000, seed: int = 0, skip_support_search: bool = True,
                       bundle: VamosBundle | None = None) -> CertReport:
    """Run the ten-step verification; see the module docstring for evidence levels."""
    if samples < 1:
        raise ValueError("samples must be positive")
    b = bundle or builtin_vamos()
    report = CertReport(samples=samples, seed=seed)
    for name, fn in EXACT_STEPS:
        _timed(report, name, "exact", lambda fn=fn: fn(b))

    def hyper():
        out = {}
        ok = True
        for label, poly in (("q", b.q), ("h4", b.h4)):
            rep = check_hyperbolic_sampled(HyperbolicInstance(poly, b.e), samples, seed)
            out[label] = {"failures": len(rep.failures)}
            ok &= rep.passed
        return ok, out

    _timed(report, "hyperbolicity", "sampled", hyper)

    forms: list[LinForm] = []

    def dual():
        forms.extend(dual_cone(b.P))
        return bool(forms) and b.P.member(b.e), {"forms": [list(map(str, f.coeffs)) for f in forms],
                                                  "e_in_P": b.P.member(b.e)}

    _timed(report, "dual_cone", "exact", dual)

    def inclusion():
        rep = cone_inclusion_sampled(HyperbolicInstance(b.h4, b.e), b.P, samples, seed)
        return rep.passed, {"failures": [[format_rational(x) for x in v] for v in rep.failures[:10]],
                            "failure_count": len(rep.failures)}

    _timed(report, "inclusion_h4_in_P", "sampled", inclusion)

    def spectra():
        ev = spectrahedron_agreement(b, samples, seed)
        return not ev["spectrahedron_failures"] and not ev["cone_failures"], ev

    _timed(report, "spectrahedron_agreement", "sampled", spectra)

    if skip_support_search:
        report.steps.append(CertStep("support_search", "skipped", {}, "best-effort", 0.0, mandatory=False))
    else:
        def support():
            cands = support_candidates(b, seed)
            found = {}
            for form in forms:
                key = ",".join(map(str, form.coeffs))
                try:
                    cert, res = support_search(form, cands, b.e, seed)
                    found[key] = {"result": res.kind, "h_tilde": cert.label,
                                  "v": [format_rational(x) if _is_exact(x) else repr(x) for x in cert.v]}
                except NotFound:
                    found[key] = {"result": "NotFound"}
            n_ok = sum(1 for r in found.values() if r["result"] != "NotFound")
            return n_ok == len(found), {"forms": found, "certified": n_ok}

        _timed(report, "support_search", "best-effort", support, mandatory=False)
    return report


# -- mutations ----------------------------------------------------------------


def mutate_bundle(b: VamosBundle, rng: random.Random) -> tuple[VamosBundle, str]:
    """One random single-entry change (+-1) of the pencil, q, h4 or f."""
    target = rng.choice(["pencil", "q", "h4", "f"])
    delta = rng.choice([-1, 1])
    if target == "pencil":
        k = rng.randrange(b.pencil.n)
        i, j = rng.randrange(b.pencil.m), rng.randrange(b.pencil.m)
        mats = [M.to_lists() for M in b.pencil.matrices]
        mats[k][i][j] += delta
        if i != j:
            mats[k][j][i] += delta
        return b.replace(pencil=SymPencil([SymMatrix(M) for M in mats])), f"A{k + 1}[{i}][{j}] {delta:+d}"

    def bump(p: Poly) -> tuple[Poly, tuple]:
        mono = rng.choice(sorted(p.terms))
        return p + Poly(p.nvars, {mono: delta}), mono

    if target == "q":
        q, mono = bump(b.q)
        return b.replace(q=q), f"q{mono} {delta:+d}"
    if target == "h4":
        h, mono = bump(b.h4)
        return b.replace(h4=h), f"h4{mono} {delta:+d}"
    k = rng.randrange(len(b.f))
    fk, mono = bump(b.f[k])
    f = list(b.f)
    f[k] = fk
    return b.replace(f=PolyVec(f)), f"f{k + 1}{mono} {delta:+d}"
