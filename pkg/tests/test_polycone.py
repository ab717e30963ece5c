import random

import pytest

from hypercone.linalg import rank
from hypercone.polycone import (
    MAX_DIM,
    DimensionError,
    LinForm,
    RayCone,
    canonicalize_form,
    dual_cone,
    member,
)
from oracles import facets_brute_force


def random_cone(rng, dim, k, lo=-4, hi=4):
    rays = []
    while len(rays) < k:
        r = tuple(rng.randint(lo, hi) for _ in range(dim))
        if any(r):
            rays.append(r)
    return RayCone(rays)


def test_orthant_is_self_dual():
    C = RayCone([(1, 0), (0, 1)])
    assert [f.coeffs for f in dual_cone(C)] == [(0, 1), (1, 0)]


def test_canonical_form_keeps_sign():
    assert canonicalize_form((2, 4)).coeffs == (1, 2)
    assert canonicalize_form((-2, -4)).coeffs == (-1, -2)
    assert canonicalize_form((0, 0)).is_zero


def test_lineality_and_degenerate_cones():
    # a single ray in R^2: dual is the halfplane, generated by +-(0,1) and (1,0)
    forms = {f.coeffs for f in dual_cone(RayCone([(1, 0)]))}
    assert forms == {(0, 1), (0, -1), (1, 0)}
    # a line: dual is the orthogonal line
    forms = {f.coeffs for f in dual_cone(RayCone([(1, 1), (-1, -1)]))}
    assert forms == {(1, -1), (-1, 1)}
    # the whole plane: dual is {0}
    assert dual_cone(RayCone([(1, 0), (-1, 0), (0, 1), (0, -1)])) == []


def test_membership():
    C = RayCone([(1, 0, 0), (0, 1, 0), (1, 1, 1)])
    assert member(C, (2, 3, 1))
    assert not member(C, (0, 0, 1))
    with pytest.raises(DimensionError):
        C.member((1, 2))


def test_dimension_limit():
    with pytest.raises(DimensionError):
        dual_cone(RayCone([[1] + [0] * MAX_DIM]))


def test_zero_ray_rejected():
    with pytest.raises(ValueError):
        RayCone([(0, 0)])


def test_against_brute_force_facets():
    # nonnegative rays of full rank give pointed full-dimensional cones
    rng = random.Random(4)
    checked = 0
    while checked < 40:
        dim = rng.randint(2, 4)
        C = random_cone(rng, dim, rng.randint(dim, dim + 4), lo=0)
        if rank(list(C.rays)) < dim:
            continue
        assert {f.coeffs for f in dual_cone(C)} == facets_brute_force(C.rays, dim)
        checked += 1


def double_dual_agrees(C: RayCone) -> bool:
    """C and the cone generated by dual(dual(C)) contain each other's generators."""
    D = dual_cone(C)
    if not D:  # C is the whole space
        return True
    DD = dual_cone(RayCone([f.coeffs for f in D], dim=C.dim))
    back = RayCone([f.coeffs for f in DD], dim=C.dim) if DD else None
    if back is None:
        return False
    return all(back.member(r) for r in C.rays) and all(C.member(f.coeffs) for f in DD)


def test_double_duality_random():
    rng = random.Random(8)
    for _ in range(40):
        dim = rng.randint(2, 4)
        assert double_dual_agrees(random_cone(rng, dim, rng.randint(1, 6)))


def test_vamos_dual(vamos):
    forms = dual_cone(vamos.P)
    assert len(forms) == 11
    assert all(f(r) >= 0 for f in forms for r in vamos.P.rays)
    assert vamos.P.member(vamos.e)
    assert LinForm((1, 1, 0, 0)) in forms


def test_json_round_trip(vamos):
    assert RayCone.from_json(vamos.P.to_json()).rays == vamos.P.rays
