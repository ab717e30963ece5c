"""Exact real-root counting and isolation for univariate rational polynomials.

All root counts are counts of *distinct* roots: every query goes through
the square-free part.  Finite interval endpoints are handled by explicit
evaluation on top of Sturm's theorem, whose variation count is
right-continuous (``V(a) - V(b)`` counts roots in ``(a, b]``).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from hypercone import kernels
from hypercone.ring import Rational, as_rational, format_rational
from hypercone._pykernels import _norm as _canon


class UniPoly:
    """Univariate polynomial; ``coeffs[k]`` is the coefficient of ``t**k``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable):
        c = [as_rational(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> Rational:
        return self.coeffs[-1]

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (list, tuple)):
            return self == UniPoly(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __call__(self, t):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return _canon(acc) if not isinstance(acc, float) else acc

    def derivative(self) -> "UniPoly":
        return UniPoly(k * self.coeffs[k] for k in range(1, len(self.coeffs)))

    def monic(self) -> "UniPoly":
        lc = Fraction(self.lc)
        return UniPoly(_canon(Fraction(c) / lc) for c in self.coeffs)

    def integer_form(self) -> list[int]:
        """Primitive integer polynomial equal to ``self`` times a positive rational."""
        if not self.coeffs:
            return []
        den = lcm(*(Fraction(c).denominator for c in self.coeffs))
        ints = [int(Fraction(c) * den) for c in self.coeffs]
        return kernels.upoly_primitive(ints)

    def to_json(self) -> list[str]:
        return [format_rational(c) for c in self.coeffs]

    def __repr__(self):
        return f"UniPoly({[format_rational(c) for c in self.coeffs]})"


def _as_uni(u) -> UniPoly:
    return u if isinstance(u, UniPoly) else UniPoly(u)


def _int_gcd_derivative(p: list[int]) -> list[int]:
    """Primitive ``gcd(p, p')`` of a primitive integer polynomial (``[1]`` if coprime)."""
    chain = kernels.upoly_sturm(p)
    last = chain[-1]
    if len(chain) < 2 or len(last) <= 1:
        return [1]
    g = kernels.upoly_primitive(last)
    if g[-1] < 0:
        g = [-c for c in g]
    return g


class RootCounter:
    """Sturm-chain machinery for one polynomial, on integer coefficients.

    ``sqf`` is the primitive square-free part, ``chain`` its Sturm chain.
    Points are passed as ``(num, den)`` pairs with ``den > 0``.
    """

    __slots__ = ("poly", "sqf", "chain", "_vinf", "_vminf")

    def __init__(self, int_poly: Sequence[int]):
        p = kernels.upoly_primitive(kernels.upoly_trim(int_poly))
        if not p:
            raise ValueError("zero polynomial")
        self.poly = p
        chain = kernels.upoly_sturm(p)
        if len(chain) >= 2 and len(chain[-1]) > 1:
            sqf = kernels.upoly_divexact(p, kernels.upoly_primitive(chain[-1]))
            if sqf[-1] < 0:
                sqf = [-c for c in sqf]
            chain = kernels.upoly_sturm(sqf)
        else:
            sqf = p
        self.sqf = sqf
        self.chain = chain
        self._vinf = kernels.upoly_variations_inf(chain, 1)
        self._vminf = kernels.upoly_variations_inf(chain, -1)

    @classmethod
    def from_uni(cls, u) -> "RootCounter":
        return cls(_as_uni(u).integer_form())

    @property
    def distinct_degree(self) -> int:
        return len(self.sqf) - 1

    def total_real(self) -> int:
        return self._vminf - self._vinf

    def variations(self, num: int, den: int = 1) -> int:
        return kernels.upoly_variations(self.chain, num, den)

    def above(self, num: int, den: int = 1) -> int:
        """Distinct roots in ``(num/den, +inf)``."""
        return kernels.upoly_variations(self.chain, num, den) - self._vinf

    def below(self, num: int, den: int = 1) -> int:
        """Distinct roots in ``(-inf, num/den]``."""
        return self._vminf - kernels.upoly_variations(self.chain, num, den)

    def is_root(self, num: int, den: int = 1) -> bool:
        return kernels.upoly_sign_at(self.sqf, num, den) == 0

    def is_real_rooted(self) -> bool:
        return self.total_real() == self.distinct_degree

    def cauchy_bound(self) -> int:
        """Integer ``B`` with every root strictly inside ``(-B, B)``."""
        p = self.sqf
        lead = abs(p[-1])
        top = max((abs(c) for c in p[:-1]), default=0)
        return 1 + -(-top // lead)

    def largest_root_upper(self, bits: int = 20) -> tuple[int, int]:
        """``(num, 2**bits)`` with ``maxroot <= num/2**bits < maxroot + 2**-bits``.

        Bisection on Sturm counts starting from the Cauchy bound.
        """
        if self.total_real() == 0:
            raise ValueError("no real roots")
        den = 1 << bits
        B = self.cauchy_bound()
        lo, hi = -B * den, B * den
        while hi - lo > 1:
            mid = (lo + hi) >> 1
            if self.above(mid, den) == 0:
                hi = mid
            else:
                lo = mid
        return hi, den

    def smallest_root_lower(self, bits: int = 20) -> tuple[int, int]:
        """``(num, 2**bits)`` with ``minroot - 2**-bits < num/2**bits <= minroot``."""
        mirrored = RootCounter([c if k % 2 == 0 else -c for k, c in enumerate(self.sqf)])
        num, den = mirrored.largest_root_upper(bits)
        return -num, den


# -- public operations --------------------------------------------------------


def squarefree_part(u) -> UniPoly:
    """``u / gcd(u, u')``, made monic."""
    u = _as_uni(u)
    if u.is_zero():
        raise ValueError("zero polynomial has no square-free part")
    sqf = RootCounter.from_uni(u).sqf
    return UniPoly(sqf).monic()


@dataclass(frozen=True)
class SturmChain:
    sequence: tuple

    def variations_at(self, x) -> int:
        x = Fraction(as_rational(x))
        return kernels.upoly_variations(
            [p.integer_form() for p in self.sequence], x.numerator, x.denominator
        )

    def variations_at_infinity(self, sign: int) -> int:
        return kernels.upoly_variations_inf([p.integer_form() for p in self.sequence], sign)

    def __len__(self):
        return len(self.sequence)

    def __getitem__(self, k) -> UniPoly:
        return self.sequence[k]


def sturm_sequence(u) -> SturmChain:
    """Sturm chain ``u, u', -rem(...), ...``; remainders are content-stripped."""
    u = _as_uni(u)
    if u.degree < 1:
        raise ValueError("Sturm sequence needs a nonconstant polynomial")
    ints = kernels.upoly_sturm(u.integer_form())
    seq = [u, u.derivative()] + [UniPoly(p) for p in ints[2:]]
    return SturmChain(tuple(seq))


def count_real_roots(u, lo=None, hi=None, lo_closed: bool = False, hi_closed: bool = False) -> int:
    """Distinct real roots of ``u`` in the interval from ``lo`` to ``hi``.

    ``None`` stands for an infinite endpoint; finite endpoints are open
    unless the matching ``*_closed`` flag is set.
    """
    u = _as_uni(u)
    if u.is_zero():
        raise ValueError("zero polynomial")
    if lo is not None and hi is not None:
        lo, hi = Fraction(as_rational(lo)), Fraction(as_rational(hi))
        if lo > hi or (lo == hi and not (lo_closed and hi_closed)):
            raise ValueError(f"malformed interval ({lo}, {hi})")
    rc = RootCounter.from_uni(u)
    if lo is None:
        v_lo = rc._vminf
        at_lo = 0
    else:
        lo = Fraction(as_rational(lo))
        v_lo = rc.variations(lo.numerator, lo.denominator)
        at_lo = int(lo_closed and rc.is_root(lo.numerator, lo.denominator))
    if hi is None:
        v_hi = rc._vinf
        at_hi = 0
    else:
        hi = Fraction(as_rational(hi))
        v_hi = rc.variations(hi.numerator, hi.denominator)
        at_hi = int((not hi_closed) and rc.is_root(hi.numerator, hi.denominator))
    return v_lo - v_hi + at_lo - at_hi


def is_real_rooted(u) -> bool:
    """True iff all complex roots of ``u`` are real (multiplicities allowed)."""
    u = _as_uni(u)
    if u.is_zero():
        raise ValueError("zero polynomial")
    return RootCounter.from_uni(u).is_real_rooted()


def no_positive_root(u) -> bool:
    u = _as_uni(u)
    if u.is_zero():
        raise ValueError("zero polynomial")
    return RootCounter.from_uni(u).above(0) == 0


class _Inconclusive:
    __slots__ = ()

    def __bool__(self):
        return False

    def __repr__(self):
        return "Inconclusive"


#: second possible outcome of :func:`nonneg_coeff_shortcut`
Inconclusive = _Inconclusive()


def nonneg_coeff_shortcut(u):
    """``True`` when every coefficient is nonnegative, else :data:`Inconclusive`.

    Nonnegative coefficients rule out positive roots.  For a real-rooted
    ``u`` the converse holds as well, so ``Inconclusive`` then means a
    strictly positive root exists.
    """
    u = _as_uni(u)
    if u.is_zero():
        raise ValueError("zero polynomial")
    if u.lc <= 0:
        raise ValueError("leading coefficient must be positive")
    if all(c >= 0 for c in u.coeffs):
        return True
    return Inconclusive


@dataclass(frozen=True)
class RootInterval:
    lo: Fraction
    hi: Fraction
    multiplicity: int

    @property
    def exact(self) -> bool:
        return self.lo == self.hi

    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2


def _multiplicity(p: list[int], lo: Fraction, hi: Fraction, exact: bool) -> int:
    mult = 1
    g = _int_gcd_derivative(p)
    while len(g) > 1:
        rc = RootCounter(g)
        if exact:
            hit = rc.is_root(lo.numerator, lo.denominator)
        else:
            # exactly one root of the square-free part lies in (lo, hi)
            hit = (rc.variations(lo.numerator, lo.denominator)
                   - rc.variations(hi.numerator, hi.denominator)
                   - int(rc.is_root(hi.numerator, hi.denominator))) > 0
        if not hit:
            break
        mult += 1
        g = _int_gcd_derivative(g)
    return mult


def isolate_real_roots(u, width=Fraction(1, 1 << 20)) -> list[RootInterval]:
    """Disjoint intervals, one per distinct real root, ascending.

    Each interval is either a single exact rational root or an open interval
    ``(lo, hi)`` of width at most ``width`` containing exactly one root.
    """
    u = _as_uni(u)
    if u.is_zero():
        raise ValueError("zero polynomial")
    width = Fraction(as_rational(width))
    p = u.integer_form()
    rc = RootCounter(p)
    B = Fraction(rc.cauchy_bound())
    out: list[tuple[Fraction, Fraction]] = []

    def count_open(a: Fraction, b: Fraction) -> int:
        return (rc.variations(a.numerator, a.denominator) - rc.variations(b.numerator, b.denominator)
                - int(rc.is_root(b.numerator, b.denominator)))

    stack = [(-B, B)]
    while stack:
        a, b = stack.pop()
        n = count_open(a, b)
        if n == 0:
            continue
        if n == 1 and b - a <= width:
            out.append((a, b))
            continue
        mid = (a + b) / 2
        if rc.is_root(mid.numerator, mid.denominator):
            out.append((mid, mid))
        stack.append((a, mid))
        stack.append((mid, b))
    out.sort()
    return [RootInterval(a, b, _multiplicity(p, a, b, a == b)) for a, b in out]
