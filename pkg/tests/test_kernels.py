"""Parity between the compiled and pure-Python kernels."""
import importlib

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hypercone import _pykernels as py
from hypercone import kernels

try:
    c = importlib.import_module("hypercone._ckernels")
except ImportError:  # extension not built in this environment
    c = None

needs_ext = pytest.mark.skipif(c is None, reason="compiled extension not built")

exps = st.tuples(*[st.integers(0, 3)] * 3)
int_polys = st.dictionaries(exps, st.integers(-50, 50).filter(bool), max_size=6)
upolys = st.lists(st.integers(-30, 30), min_size=1, max_size=8).filter(lambda p: p[-1] != 0)


def test_backend_selected():
    assert kernels.BACKEND in ("cython", "python")


@needs_ext
@given(int_polys, int_polys)
def test_mul_parity(a, b):
    assert c.poly_mul(a, b) == py.poly_mul(a, b)


@needs_ext
@given(int_polys, int_polys.filter(bool))
def test_divexact_parity(a, b):
    prod = py.poly_mul(a, b)
    assert c.poly_divexact(prod, b) == py.poly_divexact(prod, b)
    assert c.poly_divexact(a, b) == py.poly_divexact(a, b)


@needs_ext
@given(int_polys, st.lists(st.integers(-9, 9), min_size=3, max_size=3))
def test_eval_parity(a, point):
    items = list(a.items())
    assert c.poly_eval(items, point) == py.poly_eval(items, point)


@needs_ext
@given(upolys, st.integers(-20, 20), st.integers(1, 7))
def test_sturm_parity(p, num, den):
    chain_c, chain_py = c.upoly_sturm(p), py.upoly_sturm(p)
    assert chain_c == chain_py
    assert c.upoly_variations(chain_c, num, den) == py.upoly_variations(chain_py, num, den)
    for s in (-1, 1):
        assert c.upoly_variations_inf(chain_c, s) == py.upoly_variations_inf(chain_py, s)
    assert c.upoly_sign_at(p, num, den) == py.upoly_sign_at(p, num, den)


@needs_ext
@given(upolys, upolys)
def test_univariate_divexact_parity(a, b):
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            prod[i + j] += x * y
    assert c.upoly_divexact(prod, b) == py.upoly_divexact(prod, b) == a
