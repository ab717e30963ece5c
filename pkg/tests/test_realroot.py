import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hypercone.realroot import (
    Inconclusive,
    RootCounter,
    UniPoly,
    count_real_roots,
    is_real_rooted,
    isolate_real_roots,
    no_positive_root,
    nonneg_coeff_shortcut,
    squarefree_part,
    sturm_sequence,
)
from oracles import random_known_poly


def test_known_counts():
    # (t-1)^2 (t+2)
    u = [2, -3, 0, 1]
    assert count_real_roots(u) == 2
    assert count_real_roots(u, 0, None) == 1
    assert count_real_roots(u, -2, 1) == 0
    assert count_real_roots(u, -2, 1, lo_closed=True, hi_closed=True) == 2
    assert is_real_rooted(u)
    assert not is_real_rooted([1, 0, 1])


def test_squarefree_part():
    assert squarefree_part([2, -3, 0, 1]) == UniPoly([-2, 1, 1])


def test_sturm_sequence_starts_with_u_and_derivative():
    chain = sturm_sequence([-1, 0, 1])
    assert chain[0] == UniPoly([-1, 0, 1])
    assert chain[1] == UniPoly([0, 2])
    assert chain.variations_at(-2) - chain.variations_at(2) == 2


def test_nonneg_shortcut():
    assert nonneg_coeff_shortcut([0, 0, 4, 8, 1]) is True
    assert nonneg_coeff_shortcut([0, 0, 1, -2, 1]) is Inconclusive
    assert not Inconclusive
    with pytest.raises(ValueError):
        nonneg_coeff_shortcut([1, -1])


def test_no_positive_root():
    assert no_positive_root([0, 0, 4, 8, 1])
    assert not no_positive_root([0, 0, 1, -2, 1])


def test_zero_polynomial_rejected():
    with pytest.raises(ValueError):
        count_real_roots([0])


def test_malformed_interval():
    with pytest.raises(ValueError):
        count_real_roots([1, 1], 2, 1)


def test_isolation_with_exact_root_and_multiplicity():
    # (t - 1/2)^2 (t^2 - 2)
    u = UniPoly([Fraction(-1, 2), 2, Fraction(-7, 4), -1, 1])
    iv = isolate_real_roots(u, Fraction(1, 1 << 10))
    assert [r.multiplicity for r in iv] == [1, 2, 1]
    assert iv[1].lo <= Fraction(1, 2) <= iv[1].hi
    assert all(r.exact or r.hi - r.lo <= Fraction(1, 1 << 10) for r in iv)
    assert iv[0].lo < -Fraction(1414, 1000) < iv[0].hi + Fraction(1, 100)


def test_exact_midpoint_root_reported_as_point():
    iv = isolate_real_roots([0, 1])  # t = 0 is the first bisection midpoint
    assert iv[0].exact and iv[0].lo == 0


def test_bounds_bracket_extreme_roots():
    rc = RootCounter([-6, 11, -6, 1])  # roots 1, 2, 3
    n, d = rc.largest_root_upper(20)
    assert 3 <= Fraction(n, d) <= 3 + Fraction(1, 1 << 20)
    n, d = rc.smallest_root_lower(20)
    assert 1 - Fraction(1, 1 << 20) <= Fraction(n, d) <= 1


def _truth_count(roots, lo, hi):
    return sum(1 for r, _ in roots if (lo is None or r > lo) and (hi is None or r < hi))


def test_against_known_roots_200():
    rng = random.Random(11)
    for _ in range(200):
        coeffs, roots, nonreal = random_known_poly(rng)
        lo = Fraction(rng.randint(-15, 5), rng.randint(1, 3))
        hi = lo + Fraction(rng.randint(0, 20), rng.randint(1, 3))
        if lo == hi:
            continue
        assert count_real_roots(coeffs, lo, hi) == _truth_count(roots, lo, hi)
        assert count_real_roots(coeffs) == len(roots)
        assert is_real_rooted(coeffs) == (nonreal == 0)
        iv = isolate_real_roots(coeffs)
        assert len(iv) == len(roots)
        for interval, (r, m) in zip(iv, roots):
            assert interval.lo <= r <= interval.hi
            assert interval.multiplicity == m


@given(st.lists(st.integers(-10, 10), min_size=2, max_size=7).filter(lambda p: p[-1] != 0))
def test_real_root_count_matches_numpy(p):
    roots = np.roots(p[::-1])
    # only compare when numpy separates real from complex roots clearly
    im = np.abs(roots.imag)
    if np.any((im > 1e-9) & (im < 1e-3)):
        return
    real = np.sort(roots.real[im <= 1e-9])
    if len(real) > 1 and np.min(np.diff(real)) < 1e-3:
        return
    assert count_real_roots(p) == len(real)
