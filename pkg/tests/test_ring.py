from fractions import Fraction
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hypercone.ring import (
    ZERO,
    NotDivisible,
    NotHomogeneous,
    Poly,
    PolyVec,
    as_rational,
    monomials,
)

x1, x2, x3 = Poly.variables(3)

coeffs = st.one_of(st.integers(-20, 20), st.builds(Fraction, st.integers(-20, 20), st.integers(1, 7)))


def poly_strategy(nvars=3, max_deg=3, max_terms=5, min_terms=0):
    exps = st.tuples(*[st.integers(0, max_deg)] * nvars)
    return st.dictionaries(exps, coeffs, min_size=min_terms, max_size=max_terms).map(lambda t: Poly(nvars, t))


def homogeneous_strategy(nvars=3, deg=3):
    return st.dictionaries(st.sampled_from(monomials(nvars, deg)), coeffs, min_size=1, max_size=6).map(
        lambda t: Poly(nvars, t)
    ).filter(bool)


points = st.tuples(*[st.integers(-5, 5)] * 3)


def test_as_rational_rejects_float_and_bool():
    with pytest.raises(TypeError):
        as_rational(0.5)
    with pytest.raises(TypeError):
        as_rational(True)
    assert as_rational("3/6") == Fraction(1, 2)
    assert type(as_rational(Fraction(4, 2))) is int


def test_zero_terms_dropped_and_canonical():
    p = Poly(2, {(1, 0): 0, (0, 1): Fraction(2, 1)})
    assert p.terms == {(0, 1): 2}
    assert type(p.coeff((0, 1))) is int
    assert Poly.zero(2).homogeneity() == ZERO


def test_str_and_grevlex_order():
    p = x1 * x2**2 + x1**3 - x3 + 2
    assert str(p) == "x1^3 + x1*x2^2 - x3 + 2"
    assert [e for e, _ in p.items()][0] == (3, 0, 0)


def test_homogeneity():
    assert (x1**2 - x2 * x3).homogeneity() == 2
    with pytest.raises(NotHomogeneous):
        (x1**2 + x2).homogeneity()
    assert Poly.const(5, 3).homogeneity() == 0


def test_exact_divide_and_remainder():
    h = x1**2 - x2**2 - x3**2
    assert (h * (x1 + x3)).exact_divide(h) == x1 + x3
    with pytest.raises(NotDivisible):
        (h + x1).exact_divide(h)
    with pytest.raises(ZeroDivisionError):
        h.exact_divide(Poly.zero(3))
    assert not h.divides(x1)


def test_restrict_to_line_examples():
    h = x1**2 - x2**2 - x3**2
    assert h.restrict_to_line((1, 0, 0), (0, 1, 0)) == [-1, 0, 1]
    assert h.restrict_to_line((1, 0, 0), (1, 1, 0)) == [0, 2, 1]


def test_monomial_count():
    for n in range(1, 5):
        for d in range(5):
            assert len(monomials(n, d)) == comb(d + n - 1, n - 1)


def test_json_round_trip_with_fractions():
    p = x1.scale(Fraction(-3, 4)) + x2 * x3
    assert Poly.from_json(p.to_json()) == p
    v = PolyVec([p, x1])
    assert PolyVec.from_json(v.to_json()) == v


@given(poly_strategy(), poly_strategy(), poly_strategy())
def test_ring_axioms(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a - a == Poly.zero(3)


@given(poly_strategy(), poly_strategy(min_terms=1).filter(bool))
def test_division_inverts_multiplication(a, b):
    assert (a * b).exact_divide(b) == a


@given(poly_strategy(), poly_strategy(), points)
def test_evaluation_is_a_homomorphism(a, b, v):
    assert (a * b).evaluate(v) == a.evaluate(v) * b.evaluate(v)
    assert (a + b).evaluate(v) == a.evaluate(v) + b.evaluate(v)


@given(homogeneous_strategy())
def test_euler_identity(h):
    euler = sum((x * h.derivative(i) for i, x in enumerate(Poly.variables(3))), Poly.zero(3))
    assert euler == h.scale(h.homogeneity())


@given(poly_strategy(max_deg=3), points, points, st.integers(-4, 4))
def test_restriction_matches_direct_evaluation(p, e, v, t):
    coeffs = p.restrict_to_line(e, v)
    direct = p.evaluate(tuple(t * a + b for a, b in zip(e, v)))
    assert sum(c * t**k for k, c in enumerate(coeffs)) == direct


@given(poly_strategy(), points)
def test_directional_derivative_is_gradient_dot(p, a):
    grad = p.gradient()
    expected = sum((g.scale(ai) for g, ai in zip(grad, a)), Poly.zero(3))
    assert p.directional_derivative(a) == expected


@given(poly_strategy())
def test_json_round_trip(p):
    assert Poly.from_json(p.to_json()) == p
