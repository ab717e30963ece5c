"""One test per acceptance criterion; each prints a PASS/FAIL line."""
import random
import time
from fractions import Fraction

import numpy as np
import pytest

import conftest
from hypercone.construct import SolveOptions, assemble_constraints, rationalize, solve_feasibility
from hypercone.hyperbolic import HyperbolicInstance, check_hyperbolic_sampled, cone_inclusion_sampled
from hypercone.pencil import eigen_lower_bound
from hypercone.realroot import UniPoly, count_real_roots, is_real_rooted, nonneg_coeff_shortcut
from hypercone.ring import Poly, PolyVec
from hypercone.vamoslab import (
    exact_steps_fail,
    mutate_bundle,
    pencil_det,
    spectrahedron_agreement,
    step_condition_one,
    step_mixed_identity,
)
from oracles import random_known_poly
from test_pencil import random_pencil
from test_polycone import double_dual_agrees, random_cone
from test_realroot import _truth_count


def record(num, title, ok, start, detail=""):
    line = f"{'PASS' if ok else 'FAIL'} [{num:2d}] {title} ({time.perf_counter() - start:.1f}s){' ' + detail if detail else ''}"
    conftest.ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def test_01_det_identity(vamos):
    t = time.perf_counter()
    residual = pencil_det(vamos.pencil) - (vamos.q * vamos.h4).scale(8)
    record(1, "det(A(x)) - 8 q h4 == 0", residual.is_zero(), t, f"residual terms {len(residual)}")


def test_02_eigen_margin(vamos):
    t = time.perf_counter()
    ok = eigen_lower_bound(vamos.pencil.eval(vamos.e), Fraction(1, 2))
    record(2, "eigenvalues of A1+A2 exceed 1/2", ok, t)


def test_03_condition_one(vamos):
    t = time.perf_counter()
    ok1, ev1 = step_condition_one(vamos)
    ok2, ev2 = step_mixed_identity(vamos)
    record(3, "A(x) f = h4 g with constant g, mixed identity i=1..4", ok1 and ok2, t,
           f"g={ev1['g']} mixed={ev2.get('per_variable')}")


def test_04_generators_in_q_cone(vamos):
    t = time.perf_counter()
    verdicts = [nonneg_coeff_shortcut(UniPoly(vamos.q.restrict_to_line(vamos.e, w))) for w in vamos.P.rays]
    ok = len(verdicts) == 17 and all(v is True for v in verdicts)
    record(4, "nonneg shortcut on q(te+w) for 17 generators", ok, t)


def test_05_hyperbolicity_sampled(vamos):
    t = time.perf_counter()
    reps = {name: check_hyperbolic_sampled(HyperbolicInstance(p, vamos.e), 10_000, 0)
            for name, p in (("h4", vamos.h4), ("q", vamos.q))}
    fails = {k: len(r.failures) for k, r in reps.items()}
    record(5, "hyperbolicity of h4 and q, N=10^4", all(r.passed for r in reps.values()), t, f"failures {fails}")


@pytest.mark.slow
def test_06_inclusion_sampled(vamos):
    t = time.perf_counter()
    rep = cone_inclusion_sampled(HyperbolicInstance(vamos.h4, vamos.e), vamos.P, 100_000, 0)
    record(6, "C_h4(e) inside P, N=10^5", rep.passed, t, f"failures {len(rep.failures)}")


@pytest.mark.slow
def test_07_spectrahedron_agreement(vamos):
    t = time.perf_counter()
    ev = spectrahedron_agreement(vamos, 10_000, 0)
    ok = not ev["spectrahedron_failures"] and not ev["cone_failures"]
    record(7, "spectrahedron vs C_h4 & C_q, 10^4 points each side", ok, t,
           f"failures {len(ev['spectrahedron_failures'])}/{len(ev['cone_failures'])}")


def test_08_quadric_round_trip(quadric):
    t = time.perf_counter()
    h, e, f = quadric["h"], quadric["e"], quadric["f"]
    system = assemble_constraints(h, e, f, 1)
    num = solve_feasibility(system, e)
    exact = rationalize(num, system, e)
    c = exact.pencil.det().exact_divide(h)
    ok = (num.residual <= 1e-10 and exact.pencil.eval(e).is_positive_definite()
          and c.homogeneity() == 0 and c.coeff((0, 0, 0)) > 0)
    record(8, "quadric assemble/solve/rationalize", ok, t, f"det = {c} * h, residual {num.residual:.2g}")


@pytest.mark.slow
def test_09_vamos_construct(vamos):
    t = time.perf_counter()
    system = assemble_constraints(vamos.h4, vamos.e, vamos.f, 3)
    shape_ok = system.shape == (315, 189)
    num = solve_feasibility(system, vamos.e, SolveOptions())
    exact = rationalize(num, system, vamos.e)
    applied = exact.pencil.apply(vamos.f)
    cond = applied == PolyVec(vamos.h4 * g for g in exact.g) and not exact.degenerate
    pd = exact.pencil.eval(vamos.e).is_positive_definite()
    q = exact.pencil.det().exact_divide(vamos.h4)
    ok = shape_ok and cond and pd and q.homogeneity() == 5
    record(9, "Vamos constructor (315 equations, 189 unknowns)", ok, t,
           f"{num.iterations} iterations, lambda_min {num.lambda_min:.4f}")


def _companion_agrees(rng):
    """Distinct real roots on the line and on (0, inf) against numpy's companion matrix."""
    deg = rng.randint(1, 6)
    p = [rng.randint(-50, 50) for _ in range(deg)] + [rng.choice([-1, 1]) * rng.randint(1, 50)]
    roots = np.roots(p[::-1])
    real = np.sort(roots.real[np.abs(roots.imag) <= 1e-6])
    distinct = [r for i, r in enumerate(real) if i == 0 or r - real[i - 1] > 1e-6]
    if any(abs(r) <= 1e-9 for r in distinct):  # a root at 0 sits on the interval boundary
        return count_real_roots(p) == len(distinct)
    return (count_real_roots(p) == len(distinct)
            and count_real_roots(p, 0, None) == sum(1 for r in distinct if r > 0))


@pytest.mark.slow
def test_10_property_suites(vamos):
    t = time.perf_counter()
    rng = random.Random(10)
    sturm = 0
    for _ in range(1000):
        coeffs, roots, nonreal = random_known_poly(rng)
        lo = Fraction(rng.randint(-15, 5), rng.randint(1, 3))
        hi = lo + Fraction(rng.randint(1, 20), rng.randint(1, 3))
        sturm += (count_real_roots(coeffs, lo, hi) == _truth_count(roots, lo, hi)
                  and count_real_roots(coeffs) == len(roots)
                  and is_real_rooted(coeffs) == (nonreal == 0))
    companion = 0
    for _ in range(1000):
        companion += _companion_agrees(rng)
    duality = 0
    for _ in range(100):
        dim = rng.randint(2, 4)
        duality += double_dual_agrees(random_cone(rng, dim, rng.randint(1, 6)))
    adjugate = 0
    for _ in range(100):
        P = random_pencil(rng, 3, 3)
        det, M = P.det(), P.poly_matrix()
        good = True
        for i in range(3):
            adj = P.adjugate_row(i)
            for r in range(3):
                entry = sum((M[r][j] * adj[j] for j in range(3)), Poly.zero(3))
                good &= entry == (det if r == i else Poly.zero(3))
        adjugate += good
    mutations = 0
    for _ in range(50):
        bad, _desc = mutate_bundle(vamos, rng)
        mutations += exact_steps_fail(bad) is not None
    ok = sturm == 1000 and companion == 1000 and duality == 100 and adjugate == 100 and mutations == 50
    record(10, "property suites", ok, t,
           f"sturm {sturm}/1000 companion {companion}/1000 duality {duality}/100 adjugate {adjugate}/100 mutations {mutations}/50")
