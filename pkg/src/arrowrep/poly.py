"""Exact rational, Gaussian-rational and dense univariate polynomial arithmetic.

Coefficients are :class:`fractions.Fraction`.  A :class:`Poly` stores its
coefficients in increasing degree order with no trailing zero, so the zero
polynomial is the empty tuple and has degree ``-inf``.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence, Union

Rational = Fraction
Number = Union[int, Fraction]

#: Degree of the zero polynomial.
DEG_ZERO = -math.inf


class ZeroDivisorError(ZeroDivisionError):
    """Division by the zero polynomial."""


def as_rational(value: Number | str) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"not an exact rational: {value!r}")


class GaussianRational:
    """Exact complex number ``re + im*I`` with rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re: Number = 0, im: Number = 0):
        self.re = as_rational(re)
        self.im = as_rational(im)

    @staticmethod
    def _coerce(other) -> GaussianRational | None:
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, (int, Fraction)):
            return GaussianRational(other, 0)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return GaussianRational(self.re * other, self.im * other)
        if not isinstance(other, GaussianRational):
            return NotImplemented
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def conjugate(self) -> GaussianRational:
        return GaussianRational(self.re, -self.im)

    def inverse(self) -> GaussianRational:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("GaussianRational division by zero")
        return GaussianRational(self.re / n, -self.im / n)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = GaussianRational(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"


I = GaussianRational(0, 1)


def _lcm(a: int, b: int) -> int:
    return a // math.gcd(a, b) * b


class Poly:
    """Dense univariate polynomial over the rationals; immutable.

    >>> Poly([-1, 0, 1])
    Poly('x^2 - 1')
    >>> Poly([1, 1]) * Poly([-1, 1]) == Poly([-1, 0, 1])
    True
    """

    __slots__ = ("coeffs",)

    coeffs: tuple[Fraction, ...]

    def __init__(self, coeffs: Iterable[Number] = ()):
        cs = [as_rational(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    # -- constructors -------------------------------------------------------

    @classmethod
    def x(cls) -> Poly:
        return cls((0, 1))

    @classmethod
    def const(cls, c: Number) -> Poly:
        return cls((c,))

    @classmethod
    def from_roots(cls, roots: Iterable[Number]) -> Poly:
        """Monic polynomial with the given (real, rational) roots."""
        result = cls((1,))
        for r in roots:
            result = result * cls((-as_rational(r), 1))
        return result

    @classmethod
    def _from_fractions(cls, cs: list[Fraction]) -> Poly:
        while cs and cs[-1] == 0:
            cs.pop()
        p = object.__new__(cls)
        object.__setattr__(p, "coeffs", tuple(cs))
        return p

    # -- basic queries ------------------------------------------------------

    @property
    def degree(self) -> int | float:
        """Degree; ``DEG_ZERO`` (minus infinity) for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else DEG_ZERO

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    @property
    def lc(self) -> Fraction:
        """Leading coefficient (0 for the zero polynomial)."""
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def coeff(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def monic(self) -> Poly:
        if not self.coeffs:
            raise ZeroDivisorError("zero polynomial has no monic associate")
        return self.scale(1 / self.lc)

    def scale(self, c: Number) -> Poly:
        c = as_rational(c)
        return Poly._from_fractions([a * c for a in self.coeffs])

    def integer_coeffs(self) -> tuple[list[int], int]:
        """Return ``(ints, den)`` with ``self == Poly(ints) / den`` and ``den > 0``."""
        den = reduce(_lcm, (c.denominator for c in self.coeffs), 1)
        return [c.numerator * (den // c.denominator) for c in self.coeffs], den

    # -- ring operations ----------------------------------------------------

    def _coerce(self, other) -> Poly | None:
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly((other,))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        cs = list(a)
        for i, c in enumerate(b):
            cs[i] += c
        return Poly._from_fractions(cs)

    __radd__ = __add__

    def __neg__(self):
        return Poly._from_fractions([-c for c in self.coeffs])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Poly):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return Poly()
        # integer convolution, then a single division per coefficient
        a, da = self.integer_coeffs()
        b, db = other.integer_coeffs()
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        den = da * db
        return Poly._from_fractions([Fraction(c, den) for c in out])

    __rmul__ = __mul__

    def __pow__(self, n: int) -> Poly:
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly((1,))
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other: Poly) -> tuple[Poly, Poly]:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o.coeffs:
            raise ZeroDivisorError("polynomial division by zero")
        rem = list(self.coeffs)
        dg = len(o.coeffs) - 1
        inv_lc = 1 / o.lc
        if len(rem) - 1 < dg:
            return Poly(), self
        quo = [Fraction(0)] * (len(rem) - dg)
        for k in range(len(rem) - 1 - dg, -1, -1):
            c = rem[k + dg] * inv_lc
            quo[k] = c
            if c:
                for j, g in enumerate(o.coeffs):
                    rem[k + j] -= c * g
        return Poly._from_fractions(quo), Poly._from_fractions(rem[:dg])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    # -- calculus / evaluation ---------------------------------------------

    def derivative(self) -> Poly:
        return Poly._from_fractions([i * c for i, c in enumerate(self.coeffs)][1:])

    def __call__(self, z):
        """Horner evaluation; the result has the type of ``z``."""
        if isinstance(z, int):
            z = Fraction(z)
        acc = z * 0
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def __repr__(self):
        from arrowrep.parser import serialize_poly

        return f"Poly({serialize_poly(self)!r})"


def arith(op: str, f: Poly, g: Poly):
    """Dispatch ``add``, ``sub``, ``mul`` or ``divrem`` on two polynomials."""
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    if op == "divrem":
        return divmod(f, g)
    raise ValueError(f"unknown operation {op!r}")


def derivative(f: Poly) -> Poly:
    return f.derivative()


def evaluate(f: Poly, z):
    return f(z)


# -- integer polynomial helpers (coefficients low-to-high, no trailing 0) ---


def _strip(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def content(a: Sequence[int]) -> int:
    return reduce(math.gcd, a, 0)


def primitive_part(a: Sequence[int]) -> list[int]:
    """Divide by the positive content; signs are preserved."""
    g = content(a)
    return [c // g for c in a] if g > 1 else list(a)


def prem(a: Sequence[int], b: Sequence[int]) -> list[int]:
    """Pseudo-remainder ``lc(b)^(deg a - deg b + 1) * a mod b`` over the integers."""
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    e = len(r) - 1 - db + 1
    while r and len(r) - 1 >= db:
        c = r[-1]
        s = len(r) - 1 - db
        r = [lb * x for x in r]
        for j, bj in enumerate(b):
            r[s + j] -= c * bj
        r.pop()
        _strip(r)
        e -= 1
    if e > 0 and r:
        m = lb**e
        r = [m * x for x in r]
    return r


def subresultant_gcd(a: Sequence[int], b: Sequence[int]) -> list[int]:
    """Primitive gcd of two nonzero integer polynomials via the subresultant PRS."""
    r0, r1 = list(a), list(b)
    if len(r0) < len(r1):
        r0, r1 = r1, r0
    if not r1:
        return primitive_part(r0)
    r0, r1 = primitive_part(r0), primitive_part(r1)
    d = len(r0) - len(r1)
    psi = -1
    beta = (-1) ** (d + 1)
    while True:
        r2 = prem(r0, r1)
        if not r2:
            break
        r2 = [c // beta for c in r2]
        gamma = r1[-1]
        d_next = len(r1) - len(r2)
        # psi_{i+1} = (-gamma_i)^{d_i} / psi_i^{d_i - 1}
        num = (-gamma) ** d
        if d >= 1:
            den = psi ** (d - 1)
            psi = num // den
        else:
            psi = num * psi
        beta = -gamma * psi**d_next
        r0, r1, d = r1, r2, d_next
    g = primitive_part(r1)
    if g[-1] < 0:
        g = [-c for c in g]
    return g


def gcd(f: Poly, g: Poly) -> Poly:
    """Monic gcd of two polynomials, not both zero."""
    if f.is_zero() and g.is_zero():
        raise ValueError("gcd of two zero polynomials is undefined")
    if f.is_zero():
        return g.monic()
    if g.is_zero():
        return f.monic()
    a, _ = f.integer_coeffs()
    b, _ = g.integer_coeffs()
    return Poly(subresultant_gcd(a, b)).monic()


def squarefree_chain(p: Poly) -> list[Poly]:
    """``[p/gcd(p, p'), radical of gcd(p, p'), ...]``, each monic.

    The product of the chain is ``monic(p)``; the k-th element carries the
    roots of multiplicity at least k.
    """
    if p.is_constant():
        raise ValueError("squarefree chain of a constant polynomial")
    chain = []
    cur = p.monic()
    while not cur.is_constant():
        g = gcd(cur, cur.derivative())
        chain.append((cur // g).monic())
        cur = g
    return chain


def cauchy_bound(p: Poly) -> Fraction:
    """``1 + max |a_i| / |a_d|``; every real root lies in ``(-M, M]``."""
    if p.is_constant():
        raise ValueError("root bound of a constant polynomial")
    lead = abs(p.lc)
    return 1 + max(abs(c) for c in p.coeffs[:-1]) / lead


def reciprocal(p: Poly) -> Poly:
    """Reversed coefficient vector; requires ``p(0) != 0``."""
    if p.coeff(0) == 0:
        raise ValueError("reciprocal needs p(0) != 0")
    return Poly(reversed(p.coeffs))
