"""Exact sparse multivariate polynomials over the rationals.

Coefficients are kept as Python ``int`` when integral and as reduced
``fractions.Fraction`` otherwise, so the common integer case stays fast.
Terms are ordered by graded reverse lexicographic order for output.
"""
from __future__ import annotations

import json
from fractions import Fraction
from math import comb, factorial
from typing import Iterable, Mapping, Sequence, Union

from hypercone import kernels
from hypercone._pykernels import _norm as _canon

Rational = Union[int, Fraction]


class NotDivisible(ArithmeticError):
    """Raised when an exact polynomial division leaves a nonzero remainder."""


class DivisionByZeroPoly(ZeroDivisionError):
    pass


class NotHomogeneous(ValueError):
    pass


#: returned by :meth:`Poly.homogeneity` for the zero polynomial
ZERO = "Zero"


def as_rational(x) -> Rational:
    """Exact rational from int, Fraction or a ``"num/den"`` string."""
    if isinstance(x, bool):
        raise TypeError("bool is not a coefficient")
    if isinstance(x, int):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not accepted as exact coefficients")
    c = Fraction(x)
    if c.denominator == 1:
        return c.numerator
    return c


def format_rational(c: Rational) -> str:
    c = Fraction(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def grevlex_key(e: Sequence[int]):
    """Sort key; larger key means larger monomial in grevlex order."""
    return (sum(e), tuple(-x for x in reversed(e)))


class Poly:
    """Immutable polynomial in ``nvars`` variables with rational coefficients."""

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Sequence[int], object] | None = None):
        if nvars < 0:
            raise ValueError("nvars must be nonnegative")
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(int(x) for x in e)
            if len(e) != nvars:
                raise ValueError(f"exponent {e} does not have length {nvars}")
            if any(x < 0 for x in e):
                raise ValueError(f"negative exponent in {e}")
            c = as_rational(c)
            if c != 0:
                clean[e] = clean.get(e, 0) + c
        self.nvars = nvars
        self._terms = {e: _canon(c) for e, c in clean.items() if c != 0}
        self._hash = None

    @classmethod
    def _raw(cls, nvars: int, terms: dict) -> "Poly":
        # trusted: exponent tuples valid, coefficients normalized and nonzero
        p = object.__new__(cls)
        p.nvars = nvars
        p._terms = terms
        p._hash = None
        return p

    # construction helpers

    @classmethod
    def zero(cls, nvars: int) -> "Poly":
        return cls._raw(nvars, {})

    @classmethod
    def const(cls, c, nvars: int) -> "Poly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, i: int, nvars: int) -> "Poly":
        """The variable ``x_i`` (0-based index)."""
        if not 0 <= i < nvars:
            raise IndexError(f"variable index {i} out of range for {nvars} variables")
        e = [0] * nvars
        e[i] = 1
        return cls._raw(nvars, {tuple(e): 1})

    @classmethod
    def variables(cls, nvars: int) -> tuple["Poly", ...]:
        return tuple(cls.var(i, nvars) for i in range(nvars))

    @classmethod
    def linear_form(cls, coeffs: Sequence) -> "Poly":
        n = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            e = [0] * n
            e[i] = 1
            terms[tuple(e)] = c
        return cls(n, terms)

    # inspection

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self) -> list:
        """Terms as ``(exponent, coefficient)`` pairs, grevlex-descending."""
        return sorted(self._terms.items(), key=lambda t: grevlex_key(t[0]), reverse=True)

    def coeff(self, e: Sequence[int]) -> Rational:
        return self._terms.get(tuple(e), 0)

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def total_degree(self) -> int:
        if not self._terms:
            return -1
        return max(sum(e) for e in self._terms)

    def leading_term(self):
        e = max(self._terms, key=grevlex_key)
        return e, self._terms[e]

    def homogeneity(self):
        """Degree if homogeneous, :data:`ZERO` for the zero polynomial.

        Raises :class:`NotHomogeneous` otherwise.
        """
        if not self._terms:
            return ZERO
        degs = {sum(e) for e in self._terms}
        if len(degs) != 1:
            raise NotHomogeneous(f"term degrees {sorted(degs)}")
        return degs.pop()

    def is_homogeneous(self, d: int | None = None) -> bool:
        if not self._terms:
            return True
        degs = {sum(e) for e in self._terms}
        return len(degs) == 1 and (d is None or d in degs)

    def is_integral(self) -> bool:
        return all(type(c) is int for c in self._terms.values())

    # arithmetic

    def _check(self, other: "Poly"):
        if self.nvars != other.nvars:
            raise ValueError(f"nvars mismatch: {self.nvars} vs {other.nvars}")

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            self._check(other)
            return other
        return Poly.const(as_rational(other), self.nvars)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, 0) + c
            if s == 0:
                out.pop(e, None)
            else:
                out[e] = _canon(s)
        return Poly._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c) -> "Poly":
        c = as_rational(c)
        if c == 0:
            return Poly.zero(self.nvars)
        norm = _canon
        return Poly._raw(self.nvars, {e: norm(v * c) for e, v in self._terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self.scale(other)
        self._check(other)
        if not self._terms or not other._terms:
            return Poly.zero(self.nvars)
        return Poly._raw(self.nvars, kernels.poly_mul(self._terms, other._terms))

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = Poly.const(1, self.nvars)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def exact_divide(self, other: "Poly") -> "Poly":
        """Return ``c`` with ``self == other * c``; raise :class:`NotDivisible` otherwise."""
        self._check(other)
        if not other._terms:
            raise DivisionByZeroPoly("division by the zero polynomial")
        q = kernels.poly_divexact(self._terms, other._terms)
        if q is None:
            raise NotDivisible("nonzero remainder")
        return Poly._raw(self.nvars, q)

    def divides(self, other: "Poly") -> bool:
        """True iff ``self`` divides ``other`` exactly."""
        try:
            other.exact_divide(self)
        except NotDivisible:
            return False
        return True

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.nvars == other.nvars and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == Poly.const(other, self.nvars)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    # calculus and evaluation

    def derivative(self, i: int) -> "Poly":
        """Formal partial derivative with respect to ``x_i`` (0-based)."""
        if not 0 <= i < self.nvars:
            raise IndexError(f"variable index {i} out of range for {self.nvars} variables")
        out = {}
        for e, c in self._terms.items():
            k = e[i]
            if k:
                e2 = e[:i] + (k - 1,) + e[i + 1:]
                out[e2] = c * k
        return Poly._raw(self.nvars, out)

    def gradient(self) -> list["Poly"]:
        return [self.derivative(i) for i in range(self.nvars)]

    def directional_derivative(self, a: Sequence) -> "Poly":
        """``sum_i a_i * dp/dx_i``."""
        out = Poly.zero(self.nvars)
        for i, ai in enumerate(a):
            ai = as_rational(ai)
            if ai:
                out = out + self.derivative(i).scale(ai)
        return out

    def evaluate(self, v: Sequence) -> Rational:
        if len(v) != self.nvars:
            raise ValueError(f"point has {len(v)} coordinates, expected {self.nvars}")
        point = [as_rational(x) for x in v]
        return _canon(kernels.poly_eval(list(self._terms.items()), point))

    def __call__(self, *v):
        return self.evaluate(v)

    def evaluate_float(self, v: Sequence[float]) -> float:
        total = 0.0
        for e, c in self._terms.items():
            term = float(c)
            for x, k in zip(v, e):
                if k:
                    term *= x ** k
            total += term
        return total

    def restrict_to_line(self, e: Sequence, v: Sequence) -> list[Rational]:
        """Ascending coefficients of ``t -> p(t*e + v)``.

        Uses Taylor expansion along ``e``: the coefficient of ``t**k`` is
        ``(D_e^k p)(v) / k!``.
        """
        if len(e) != self.nvars or len(v) != self.nvars:
            raise ValueError("dimension mismatch")
        coeffs = []
        d = self
        k = 0
        while d:
            coeffs.append(_canon(Fraction(d.evaluate(v)) / factorial(k)))
            d = d.directional_derivative(e)
            k += 1
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        return coeffs

    # presentation

    def __repr__(self):
        if not self._terms:
            return f"Poly({self.nvars}, 0)"
        return f"Poly({self.nvars}, {self})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for e, c in self.items():
            mono = "*".join(
                f"x{i + 1}" if k == 1 else f"x{i + 1}^{k}" for i, k in enumerate(e) if k
            )
            cs = format_rational(c)
            if mono:
                if c == 1:
                    s = mono
                elif c == -1:
                    s = "-" + mono
                else:
                    s = f"{cs}*{mono}"
            else:
                s = cs
            parts.append(s)
        return " + ".join(parts).replace("+ -", "- ")

    def to_json(self) -> dict:
        return {
            "nvars": self.nvars,
            "terms": [{"c": format_rational(c), "e": list(e)} for e, c in self.items()],
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> "Poly":
        n = int(obj["nvars"])
        terms: dict = {}
        for t in obj["terms"]:
            e = tuple(int(x) for x in t["e"])
            terms[e] = terms.get(e, 0) + as_rational(str(t["c"]))
        return cls(n, terms)


def monomials(nvars: int, degree: int) -> list[tuple[int, ...]]:
    """All exponent vectors of the given total degree, grevlex-descending."""
    if degree < 0:
        return []
    out = []

    def rec(prefix, left, slots):
        if slots == 1:
            out.append(tuple(prefix + [left]))
            return
        for k in range(left, -1, -1):
            rec(prefix + [k], left - k, slots - 1)

    if nvars == 0:
        return [()] if degree == 0 else []
    rec([], degree, nvars)
    assert len(out) == comb(degree + nvars - 1, nvars - 1)
    return sorted(out, key=grevlex_key, reverse=True)


class PolyVec(tuple):
    """Nonempty tuple of polynomials sharing ``nvars``."""

    def __new__(cls, entries: Iterable[Poly]):
        entries = tuple(entries)
        if not entries:
            raise ValueError("PolyVec must be nonempty")
        n = entries[0].nvars
        if any(p.nvars != n for p in entries):
            raise ValueError("PolyVec entries must share nvars")
        return super().__new__(cls, entries)

    @property
    def nvars(self) -> int:
        return self[0].nvars

    def homogeneous_degree(self):
        """Common degree of the nonzero entries, :data:`ZERO` if all vanish."""
        degs = set()
        for p in self:
            d = p.homogeneity()
            if d != ZERO:
                degs.add(d)
        if not degs:
            return ZERO
        if len(degs) > 1:
            raise NotHomogeneous(f"entry degrees {sorted(degs)}")
        return degs.pop()

    def dot(self, coeffs: Sequence) -> Poly:
        out = Poly.zero(self.nvars)
        for c, p in zip(coeffs, self):
            out = out + (p * c)
        return out

    def to_json(self) -> dict:
        return {"nvars": self.nvars, "entries": [p.to_json() for p in self]}

    @classmethod
    def from_json(cls, obj) -> "PolyVec":
        if isinstance(obj, list):
            return cls(Poly.from_json(p) for p in obj)
        return cls(Poly.from_json(p) for p in obj["entries"])


def dumps(obj) -> str:
    return json.dumps(obj.to_json(), indent=1)
