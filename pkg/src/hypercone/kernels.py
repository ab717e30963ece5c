"""Backend selection for the hot kernels.

The compiled module ``hypercone._ckernels`` is used when it imports; the
pure-Python twin in ``hypercone._pykernels`` is the fallback.  Set
``HYPERCONE_PURE_PYTHON=1`` to force the fallback.
"""
import os

from hypercone import _pykernels

if os.environ.get("HYPERCONE_PURE_PYTHON", "") not in ("", "0"):
    _impl = _pykernels
else:
    try:
        from hypercone import _ckernels as _impl
    except ImportError:  # extension not built
        _impl = _pykernels

BACKEND = _impl.BACKEND

poly_mul = _impl.poly_mul
poly_divexact = _impl.poly_divexact
poly_eval = _impl.poly_eval
upoly_sturm = _impl.upoly_sturm
upoly_variations = _impl.upoly_variations
upoly_variations_inf = _impl.upoly_variations_inf
upoly_sign_at = _impl.upoly_sign_at
upoly_divexact = _impl.upoly_divexact

# cheap helpers always come from the Python module
upoly_trim = _pykernels.upoly_trim
upoly_content = _pykernels.upoly_content
upoly_primitive = _pykernels.upoly_primitive
upoly_derivative = _pykernels.upoly_derivative
upoly_prem = _pykernels.upoly_prem
