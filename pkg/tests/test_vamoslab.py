import json
import random

import pytest

from hypercone import vamos_data
from hypercone.hyperbolic import HyperbolicInstance, check_hyperbolic_sampled, sample_cone_points
from hypercone.pencil import SymMatrix, SymPencil
from hypercone.polycone import LinForm, RayCone
from hypercone.ring import Poly
from hypercone.vamoslab import (
    NotFound,
    SupportCertificate,
    exact_steps_fail,
    mutate_bundle,
    recover_g,
    spectrahedron_agreement,
    support_certificate,
    support_search,
    verify_certificate,
)

x1, x2, x3 = Poly.variables(3)
QUAD = x1**2 - x2**2 - x3**2


def test_bundle_contents(vamos):
    assert vamos.h4.evaluate(vamos.e) == 1
    assert len(vamos.P.rays) == 17
    assert vamos.q.homogeneity() == 5
    assert len(vamos.q) <= 56
    assert vamos.pencil.n == 4 and vamos.pencil.m == 9
    assert len(vamos.f) == 9 and vamos.f.homogeneous_degree() == 3


def test_h4_matches_definition(vamos):
    X = Poly.variables(4)
    s = X[0] + X[1] + X[2] + X[3]
    e3 = X[0] * X[1] * X[2] + X[0] * X[1] * X[3] + X[0] * X[2] * X[3] + X[1] * X[2] * X[3]
    assert vamos.h4 == X[0] ** 2 * X[1] ** 2 + s * e3.scale(4)


def test_frozen_g_matches_exact_division(vamos):
    assert tuple(recover_g(vamos)) == vamos_data.G_VECTOR


@pytest.fixture(scope="module")
def small_report():
    return verify_certificate(samples=200, seed=0)


def test_default_pipeline_passes(small_report):
    assert small_report.passed
    names = [s.name for s in small_report.steps]
    assert len(names) == 10
    assert small_report.step("support_search").verdict == "skipped"
    levels = {s.name: s.level for s in small_report.steps}
    assert levels["det_identity"] == "exact" and levels["inclusion_h4_in_P"] == "sampled"


def test_report_json_is_stable(small_report):
    again = verify_certificate(samples=200, seed=0)
    assert again.dumps(timings=False) == small_report.dumps(timings=False)
    obj = json.loads(small_report.dumps())
    assert obj["overall"] == "pass" and len(obj["steps"]) == 10


def test_pencil_mutation_fails_det_step(vamos):
    mats = [M.to_lists() for M in vamos.pencil.matrices]
    mats[0][1][2] += 1
    mats[0][2][1] += 1
    bad = vamos.replace(pencil=SymPencil([SymMatrix(M) for M in mats]))
    report = verify_certificate(samples=20, seed=0, bundle=bad)
    step = report.step("det_identity")
    assert step.verdict == "fail" and step.evidence["residual_terms"] > 0
    assert not report.passed


def test_truncated_generators_isolate_inclusion_step(vamos):
    bad = vamos.replace(P=RayCone(vamos.P.rays[:16]))
    report = verify_certificate(samples=400, seed=0, bundle=bad)
    verdicts = {s.name: s.verdict for s in report.steps}
    for name in ("det_identity", "eigen_margin", "condition_one", "mixed_identity",
                 "generators_in_q_cone", "hyperbolicity", "dual_cone", "spectrahedron_agreement"):
        assert verdicts[name] == "pass", name
    assert verdicts["inclusion_h4_in_P"] == "fail"
    assert report.step("inclusion_h4_in_P").evidence["failure_count"] > 0


def test_mutations_flip_an_exact_step(vamos):
    rng = random.Random(2)
    assert exact_steps_fail(vamos) is None
    for _ in range(10):
        bad, desc = mutate_bundle(vamos, rng)
        assert exact_steps_fail(bad) is not None, desc


def test_spectrahedron_agreement_small(vamos):
    ev = spectrahedron_agreement(vamos, 100, seed=1)
    assert not ev["spectrahedron_failures"] and not ev["cone_failures"]


def test_support_certificate_examples():
    e = (1, 0, 0)
    good = SupportCertificate(LinForm((1, 1, 0)), QUAD, (1, -1, 0), 2)
    assert support_certificate(good, e).kind == "ExactPass"
    flipped = SupportCertificate(LinForm((-1, -1, 0)), QUAD, (1, -1, 0), -2)
    assert support_certificate(flipped, e).kind == "Fail"
    apex = SupportCertificate(LinForm((1, 1, 0)), QUAD, (0, 0, 0), 2)
    res = support_certificate(apex, e)
    assert res.kind == "Fail" and "gradient" in res.reason
    off = SupportCertificate(LinForm((1, 1, 0)), QUAD, (2, -1, 0), 2)
    assert support_certificate(off, e).kind == "Fail"


def test_support_search_quadric():
    cert, res = support_search(LinForm((1, 1, 0)), [("quadric", QUAD)], (1, 0, 0))
    assert res.kind == "ExactPass"
    assert cert.v == (1, -1, 0) and cert.lam == 2
    with pytest.raises(ValueError):
        support_search(LinForm((0, 0, 0)), [("quadric", QUAD)], (1, 0, 0))


def test_support_search_not_found_is_reported():
    # a form that is negative somewhere on the cone has no tangency witness
    with pytest.raises(NotFound):
        support_search(LinForm((1, 2, 0)), [("quadric", QUAD)], (1, 0, 0), starts=4)


def test_support_search_vamos_simple_form(vamos):
    cert, res = support_search(LinForm((1, 1, 0, 0)), [("h4", vamos.h4)], vamos.e)
    assert res.kind in ("ExactPass", "NumericPass")


def test_directional_derivatives_are_hyperbolic_and_contain_cone(vamos):
    H4 = HyperbolicInstance(vamos.h4, vamos.e)
    inside = sample_cone_points(H4, 50, seed=4, mode="near-boundary")
    for a in sample_cone_points(H4, 3, seed=5, mode="interior"):
        D = HyperbolicInstance(vamos.h4.directional_derivative(a), vamos.e)
        assert check_hyperbolic_sampled(D, 200, seed=0).passed
        assert all(D.in_cone(v) for v in inside)
