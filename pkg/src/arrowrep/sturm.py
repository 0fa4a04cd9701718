"""Sturm sequences, real-root counting and isolation, interlacing nodes.

Sequences are kept as primitive integer polynomials: each remainder is
rescaled by a positive rational, which never changes a sign-variation count.
Signs at rational points are first decided in floating point with a
rigorous Horner error bound; only ambiguous signs fall back to exact
integer evaluation.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from arrowrep.poly import Poly, prem, primitive_part, squarefree_chain, cauchy_bound

_U = 2.0**-53
_TINY = 5e-324


class NotSquarefreeError(ValueError):
    """Raised when a Sturm sequence is requested for a polynomial with a repeated root."""


@dataclass(frozen=True)
class RootInterval:
    """Half-open interval ``(lo, hi]`` holding exactly one root.

    Endpoints produced by :func:`isolate_real_roots` are never roots.
    """

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError(f"empty interval ({self.lo}, {self.hi}]")

    def __contains__(self, x) -> bool:
        return self.lo < x <= self.hi

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo


class _IntPoly:
    """Integer polynomial with a cached float image for fast sign tests."""

    __slots__ = ("c", "deg", "fl")

    def __init__(self, c: list[int]):
        self.c = c
        self.deg = len(c) - 1
        shift = max(max(abs(v).bit_length() for v in c) - 60, 0)
        scale = 1 << shift
        self.fl = [v / scale for v in c]

    def exact_sign(self, n: int, m: int) -> int:
        """Sign at ``n/m`` (``m > 0``) via homogeneous Horner."""
        c = self.c
        acc = c[-1]
        mp = 1
        for i in range(self.deg - 1, -1, -1):
            mp *= m
            acc = acc * n + c[i] * mp
        return (acc > 0) - (acc < 0)

    def sign(self, x: Fraction, xf: float) -> int:
        if xf == xf and abs(xf) < 1e300:
            acc = 0.0
            mag = 0.0
            ax = abs(xf)
            for v in reversed(self.fl):
                acc = acc * xf + v
                mag = mag * ax + abs(v)
            if math.isfinite(mag):
                d = self.deg
                bound = 2.0 * (3 * d + 2) * _U * mag + (d + 1) * _TINY * max(1.0, ax) ** d
                if acc > bound:
                    return 1
                if acc < -bound:
                    return -1
        return self.exact_sign(x.numerator, x.denominator)


def _to_float(x: Fraction) -> float:
    try:
        return x.numerator / x.denominator
    except OverflowError:
        return math.inf


@dataclass(frozen=True)
class SturmSequence:
    """Sturm sequence ``p, p', -rem(p, p'), ...`` up to positive rational factors."""

    polys: tuple[Poly, ...]
    _ints: tuple[_IntPoly, ...] = field(repr=False, compare=False)

    @classmethod
    def of(cls, p: Poly) -> SturmSequence:
        return sturm_sequence(p)

    def signs(self, x: Fraction) -> list[int]:
        xf = _to_float(x)
        return [q.sign(x, xf) for q in self._ints]

    def variations(self, x: Fraction) -> int:
        return _variations(self.signs(x))

    def count(self, a: Fraction, b: Fraction) -> int:
        """Distinct roots in ``(a, b]`` as ``V(a) - V(b)``; endpoints may be roots."""
        return self.variations(a) - self.variations(b)

    def sign_at(self, x: Fraction) -> int:
        """Sign of the leading polynomial at ``x``."""
        q = self._ints[0]
        return q.sign(x, _to_float(x))


def _variations(signs: Sequence[int]) -> int:
    v = 0
    last = 0
    for s in signs:
        if s:
            if last and s != last:
                v += 1
            last = s
    return v


def sturm_sequence(p: Poly) -> SturmSequence:
    """Sturm sequence of a squarefree polynomial of degree >= 1."""
    if p.is_constant():
        raise ValueError("Sturm sequence of a constant polynomial")
    a = primitive_part(p.integer_coeffs()[0])
    b = primitive_part(p.derivative().integer_coeffs()[0])
    seq = [a, b]
    while len(seq[-1]) > 1:
        prev, cur = seq[-2], seq[-1]
        r = prem(prev, cur)
        if not r:
            raise NotSquarefreeError("polynomial is not squarefree")
        # prem = lc^(delta+1) * rem; flip to get a positive multiple of -rem
        delta = len(prev) - len(cur)
        if cur[-1] < 0 and (delta + 1) % 2 == 1:
            seq.append(primitive_part(r))
        else:
            seq.append(primitive_part([-c for c in r]))
    return SturmSequence(tuple(Poly(c) for c in seq), tuple(_IntPoly(c) for c in seq))


def count_real_roots(p: Poly, interval: tuple[Fraction, Fraction] | None = None) -> int:
    """Distinct real roots of squarefree ``p`` in ``(a, b]``, or on the whole line."""
    seq = sturm_sequence(p)
    if interval is None:
        m = cauchy_bound(p)
        return seq.count(-m, m)
    a, b = (Fraction(v) for v in interval)
    if not a < b:
        raise ValueError("interval needs a < b")
    if p(a) == 0 or p(b) == 0:
        raise ValueError("interval endpoint is a root")
    return seq.count(a, b)


def count_real_roots_with_multiplicity(p: Poly) -> int:
    """Real roots of any nonconstant ``p``, counted with multiplicity."""
    return sum(count_real_roots(f) for f in squarefree_chain(p))


def dyadic_root_bound(p: Poly) -> Fraction:
    """A power of two strictly exceeding every root modulus (Fujiwara-type bound)."""
    d = len(p.coeffs) - 1
    lead = abs(p.lc)
    e = 0
    for k in range(1, d + 1):
        c = abs(p.coeffs[d - k])
        if c:
            ratio = c / lead
            # 2**t >= ratio
            t = ratio.numerator.bit_length() - ratio.denominator.bit_length() + 1
            e = max(e, -(-t // k))
    return Fraction(2) ** (e + 2)


def _isolate_exact_root(seq: SturmSequence, root: Fraction, half_width: Fraction, vmemo) -> RootInterval:
    g = half_width
    while True:
        a, b = root - g, root + g
        if seq.sign_at(a) and seq.sign_at(b) and vmemo(a) - vmemo(b) == 1:
            return RootInterval(a, b)
        g /= 2


def isolate_real_roots(p: Poly) -> list[RootInterval]:
    """Sorted disjoint intervals, one per real root of squarefree ``p``.

    Consecutive intervals may share an endpoint, but no endpoint is a root.
    """
    seq = sturm_sequence(p)
    memo: dict[Fraction, int] = {}

    def v(x: Fraction) -> int:
        if x not in memo:
            memo[x] = seq.variations(x)
        return memo[x]

    bound = dyadic_root_bound(p)
    found: list[RootInterval] = []
    stack = [(-bound, bound, v(-bound) - v(bound))]
    while stack:
        lo, hi, c = stack.pop()
        if c == 0:
            continue
        if c == 1:
            found.append(RootInterval(lo, hi))
            continue
        mid = (lo + hi) / 2
        if seq.sign_at(mid) == 0:
            iv = _isolate_exact_root(seq, mid, (hi - lo) / 4, v)
            found.append(iv)
            stack.append((lo, iv.lo, v(lo) - v(iv.lo)))
            stack.append((iv.hi, hi, v(iv.hi) - v(hi)))
        else:
            left = v(lo) - v(mid)
            stack.append((lo, mid, left))
            stack.append((mid, hi, c - left))
    found.sort(key=lambda iv: iv.lo)
    return found


def refine_interval(p: Poly, iv: RootInterval, seq: SturmSequence | None = None) -> RootInterval:
    """Halve an isolating interval, keeping endpoints off the root."""
    seq = seq or sturm_sequence(p)
    mid = (iv.lo + iv.hi) / 2
    if seq.sign_at(mid) == 0:
        g = iv.width / 4
        return RootInterval(mid - g, mid + g)
    if seq.count(iv.lo, mid) == 1:
        return RootInterval(iv.lo, mid)
    return RootInterval(mid, iv.hi)


def select_interlacing_nodes(intervals: Sequence[RootInterval]) -> list[Fraction]:
    """Gap midpoints ``(hi_i + lo_{i+1}) / 2`` between consecutive isolating intervals."""
    nodes = []
    for left, right in zip(intervals, intervals[1:]):
        if left.hi > right.lo:
            raise ValueError("intervals overlap")
        nodes.append((left.hi + right.lo) / 2)
    return nodes
