"""Hyperbolicity tests and exact sampling of hyperbolicity cones.

Every random direction has rational coordinates and every verdict is
computed in exact arithmetic, so a passing sample is an exact statement
about that direction.  Sampling is reproducible: the generator for sample
``i`` is seeded from ``(seed, i)`` alone, so serial and parallel runs give
identical reports.
"""
from __future__ import annotations

import json
import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, lcm
from typing import Callable, Sequence

from hypercone import kernels
from hypercone.realroot import RootCounter, RootInterval, UniPoly, isolate_real_roots
from hypercone.ring import Poly, as_rational, format_rational

DIRECTION_RANGE = 1 << 16
BOUNDARY_BITS = 20


class NotRealRooted(ValueError):
    """``h(te + v)`` has non-real roots, so ``h`` is not hyperbolic along ``v``."""


def _point(v) -> tuple:
    return tuple(as_rational(x) for x in v)


def _integer_point(v: Sequence) -> tuple[list[int], int]:
    """``(V, D)`` with ``v = V / D``, ``D > 0``."""
    fr = [Fraction(x) for x in v]
    D = lcm(*(x.denominator for x in fr)) if fr else 1
    return [int(x * D) for x in fr], D


class HyperbolicInstance:
    """A homogeneous polynomial ``h`` with a point ``e`` where ``h(e) != 0``.

    Restriction to lines ``t -> h(te + v)`` goes through precomputed Taylor
    polynomials ``D_e^k h / k!`` with integer coefficients.
    """

    def __init__(self, h: Poly, e: Sequence):
        self.h = h
        self.e = _point(e)
        if len(self.e) != h.nvars:
            raise ValueError("e has the wrong dimension")
        d = h.homogeneity()
        if d == "Zero":
            raise ValueError("zero polynomial")
        self.degree = d
        self.h_at_e = h.evaluate(self.e)
        if self.h_at_e == 0:
            raise ValueError("h vanishes at e")
        taylor = []
        p = h
        for k in range(d + 1):
            taylor.append(p.scale(Fraction(1, factorial(k))))
            p = p.directional_derivative(self.e)
        den = lcm(*(Fraction(c).denominator for t in taylor for c in t.terms.values()))
        self._taylor = [list(t.scale(den).terms.items()) for t in taylor]

    @property
    def n(self) -> int:
        return self.h.nvars

    def __reduce__(self):
        return (HyperbolicInstance, (self.h, self.e))

    def line_poly(self, v: Sequence) -> list[int]:
        """Integer polynomial equal to ``h(te + v)`` times a positive constant."""
        if len(v) != self.n:
            raise ValueError(f"point has {len(v)} coordinates, expected {self.n}")
        V, D = _integer_point(v)
        out = []
        dk = 1
        for items in self._taylor:
            out.append(kernels.poly_eval(items, V) * dk)
            dk *= D
        return out

    def restrict(self, v: Sequence) -> UniPoly:
        """Exact coefficients of ``h(te + v)``."""
        return UniPoly(self.h.restrict_to_line(self.e, _point(v)))

    def counter(self, v: Sequence) -> RootCounter:
        return RootCounter(self.line_poly(v))

    def in_cone(self, v: Sequence) -> bool:
        """True iff ``h(te + v)`` has no strictly positive root."""
        return self.counter(v).above(0) == 0

    contains = in_cone

    def is_real_rooted_along(self, v: Sequence) -> bool:
        return self.counter(v).is_real_rooted()


def in_cone(H: HyperbolicInstance, v: Sequence) -> bool:
    return H.in_cone(v)


# -- reports and seeding ------------------------------------------------------


@dataclass
class SampleReport:
    samples: int
    seed: int
    failures: list = field(default_factory=list)
    label: str = ""

    @property
    def verdict(self) -> str:
        return "pass" if not self.failures else "fail"

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "samples": self.samples,
            "seed": self.seed,
            "failures": [[format_rational(x) for x in p] for p in self.failures],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1)


def sample_rng(seed: int, index: int, stream: int = 0) -> random.Random:
    """Independent generator for one sample, derived from ``(seed, index, stream)``."""
    return random.Random((stream << 160) | ((seed & (2**64 - 1)) << 64) | index)


def random_direction(rng: random.Random, n: int) -> tuple:
    """Coordinates ``a/b`` with ``a`` uniform in ``[-2^16, 2^16]``, ``b`` in ``[1, 2^16]``."""
    return tuple(
        as_rational(Fraction(rng.randint(-DIRECTION_RANGE, DIRECTION_RANGE),
                             rng.randint(1, DIRECTION_RANGE)))
        for _ in range(n)
    )


def worker_count() -> int:
    try:
        return max(1, int(os.environ.get("HYPERCONE_THREADS", "1")))
    except ValueError:
        return 1


def _chunked(fn: Callable, args: tuple, N: int) -> list:
    """Run ``fn(*args, start, stop)`` over ``range(N)`` and concatenate results in order."""
    workers = min(worker_count(), max(1, N))
    if workers == 1 or N < 64:
        return fn(*args, 0, N)
    step = -(-N // (workers * 4))
    bounds = [(s, min(N, s + step)) for s in range(0, N, step)]
    out = []
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(fn, *args, a, b) for a, b in bounds]
        for f in futures:
            out.extend(f.result())
    return out


# -- hyperbolicity ------------------------------------------------------------


def _hyperbolic_chunk(H: HyperbolicInstance, seed: int, start: int, stop: int) -> list:
    bad = []
    for i in range(start, stop):
        v = random_direction(sample_rng(seed, i), H.n)
        if not H.counter(v).is_real_rooted():
            bad.append(v)
    return bad


def check_hyperbolic_sampled(H: HyperbolicInstance, N: int, seed: int = 0) -> SampleReport:
    """Exact real-rootedness of ``h(te + v)`` for ``N`` random rational ``v``.

    Passing is evidence, not proof.
    """
    if N < 1:
        raise ValueError("need at least one sample")
    failures = _chunked(_hyperbolic_chunk, (H, seed), N)
    return SampleReport(samples=N, seed=seed, failures=failures, label="hyperbolicity")


def eigenvalues_along(H: HyperbolicInstance, v: Sequence, width=Fraction(1, 1 << 20)) -> list[RootInterval]:
    """Isolating intervals for the roots of ``h(te + v)``, with multiplicities."""
    u = UniPoly(H.line_poly(v))
    rc = RootCounter(u.coeffs)
    if not rc.is_real_rooted():
        raise NotRealRooted(f"h(te + v) has non-real roots for v={v}")
    return isolate_real_roots(u, width)


def _shift(w: Sequence, mu, e: Sequence) -> tuple:
    return tuple(as_rational(Fraction(wi) + mu * Fraction(ei)) for wi, ei in zip(w, e))


def boundary_shift(H: HyperbolicInstance, w: Sequence, bits: int = BOUNDARY_BITS) -> tuple:
    """``w + mu e`` where ``mu`` is the dyadic upper bound of the largest root of
    ``h(te + w)`` within ``2**-bits``; the result lies in the cone, near its boundary."""
    rc = H.counter(w)
    if not rc.is_real_rooted():
        raise NotRealRooted(f"h(te + w) has non-real roots for w={w}")
    num, den = rc.largest_root_upper(bits)
    return _shift(w, Fraction(num, den), H.e)


def _normalized(w: tuple) -> tuple:
    top = max(abs(Fraction(x)) for x in w)
    if top == 0:
        return w
    return tuple(as_rational(Fraction(x) / top) for x in w)


def _cone_point(H: HyperbolicInstance, rng: random.Random, interior: bool,
                extra: Sequence[HyperbolicInstance] = ()) -> tuple:
    """One exact point of ``C_H`` (intersected with the cones in ``extra``)."""
    while True:
        w = _normalized(random_direction(rng, H.n))
        counters = [H.counter(w)] + [G.counter(w) for G in extra]
        if all(rc.is_real_rooted() for rc in counters):
            break
    ups = [rc.largest_root_upper(BOUNDARY_BITS) for rc in counters]
    mu = max(Fraction(a, b) for a, b in ups)
    if interior:
        lo_n, lo_d = counters[0].smallest_root_lower(BOUNDARY_BITS)
        spread = Fraction(ups[0][0], ups[0][1]) - Fraction(lo_n, lo_d)
        mu += spread / 16 if spread > 0 else Fraction(1, 16)
    return _shift(w, mu, H.e)


def _sample_chunk(H, seed, interior, extra, start, stop) -> list:
    out = []
    for i in range(start, stop):
        v = _cone_point(H, sample_rng(seed, i, stream=1 + int(interior)), interior, extra)
        if not H.in_cone(v) or not all(G.in_cone(v) for G in extra):
            raise AssertionError(f"sampled point {v} failed the exact cone test")
        out.append(v)
    return out


def sample_cone_points(H: HyperbolicInstance, N: int, seed: int = 0, mode: str = "interior",
                       extra: Sequence[HyperbolicInstance] = ()) -> list[tuple]:
    """``N`` exact points of the hyperbolicity cone, each re-checked with :func:`in_cone`.

    ``mode="near-boundary"`` puts each point within ``2**-20`` (along ``e``) of
    the boundary, after scaling the direction to max-norm one.
    ``mode="interior"`` adds a margin of 1/16 of the root spread.  Cones in
    ``extra`` (sharing ``e``) are intersected in.
    """
    if mode not in ("interior", "near-boundary"):
        raise ValueError(f"unknown mode {mode!r}")
    if N <= 0:
        return []
    return _chunked(_sample_chunk, (H, seed, mode == "interior", tuple(extra)), N)


# -- inclusion ----------------------------------------------------------------


def membership(outer) -> Callable[[Sequence], bool]:
    """Exact membership predicate for a cone given in any supported form."""
    from hypercone.pencil import SymPencil

    if isinstance(outer, SymPencil):
        return outer.is_psd_at
    if isinstance(outer, HyperbolicInstance):
        return outer.in_cone
    if hasattr(outer, "member"):
        return outer.member
    if callable(outer):
        return outer
    raise TypeError(f"cannot test membership in {type(outer).__name__}")


def _inclusion_chunk(H, outer, seed, start, stop) -> list:
    test = membership(outer)
    bad = []
    for i in range(start, stop):
        v = _cone_point(H, sample_rng(seed, i, stream=3), interior=(i % 2 == 0))
        if not H.in_cone(v):
            raise AssertionError(f"sampled point {v} failed the exact cone test")
        if not test(v):
            bad.append(v)
    return bad


def cone_inclusion_sampled(H_inner: HyperbolicInstance, outer, N: int, seed: int = 0) -> SampleReport:
    """Sample ``N`` points of the inner cone (even indices interior, odd near the
    boundary) and test each against the outer cone exactly."""
    if N < 1:
        raise ValueError("need at least one sample")
    failures = _chunked(_inclusion_chunk, (H_inner, outer, seed), N)
    return SampleReport(samples=N, seed=seed, failures=failures, label="inclusion")
