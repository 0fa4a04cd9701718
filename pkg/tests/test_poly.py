from __future__ import annotations

import random
from fractions import Fraction as F

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from arrowrep.poly import (
    GaussianRational,
    I,
    Poly,
    ZeroDivisorError,
    arith,
    cauchy_bound,
    gcd,
    prem,
    reciprocal,
    squarefree_chain,
    subresultant_gcd,
)
from corpus import X, random_poly, to_sympy

rationals = st.fractions(max_denominator=12).filter(lambda q: abs(q) < 10**6)
polys = st.lists(rationals, max_size=7).map(Poly)


class TestBasics:
    def test_zero_polynomial(self):
        z = Poly()
        assert z.is_zero() and z.degree == float("-inf") and not z
        assert Poly([0, 0]) == z

    def test_trailing_zeros_stripped(self):
        assert Poly([1, 2, 0, 0]).coeffs == (F(1), F(2))

    def test_immutable(self):
        p = Poly([1, 2])
        with pytest.raises(AttributeError):
            p.coeffs = (F(3),)

    def test_from_roots(self):
        assert Poly.from_roots([1, -1, 0]) == Poly([0, -1, 0, 1])

    def test_lc_and_monic(self):
        p = Poly([2, 0, 4])
        assert p.lc == 4 and p.monic() == Poly([F(1, 2), 0, 1])

    def test_integer_coeffs(self):
        ints, den = Poly([F(1, 2), F(1, 3)]).integer_coeffs()
        assert den == 6 and ints == [3, 2]

    def test_evaluate_gaussian(self):
        p = Poly([1, 0, 1])
        assert p(I) == GaussianRational(0)
        assert p(GaussianRational(1, 1)) == GaussianRational(1, 2)

    def test_divmod_by_zero(self):
        with pytest.raises(ZeroDivisorError):
            divmod(Poly([1]), Poly())

    def test_arith_dispatch(self):
        f, g = Poly([1, 1]), Poly([-1, 1])
        assert arith("mul", f, g) == Poly([-1, 0, 1])
        assert arith("divrem", Poly([-1, 0, 1]), g) == (f, Poly())
        with pytest.raises(ValueError):
            arith("pow", f, g)

    def test_reciprocal(self):
        assert reciprocal(Poly([1, 2, 3])) == Poly([3, 2, 1])
        with pytest.raises(ValueError):
            reciprocal(Poly([0, 1]))

    def test_cauchy_bound_contains_roots(self):
        p = Poly.from_roots([F(-7, 2), 3, 5])
        assert cauchy_bound(p) > 5


class TestGaussian:
    def test_field_ops(self):
        a, b = GaussianRational(1, 2), GaussianRational(F(1, 3), -1)
        assert (a * b) / b == a
        assert a * a.inverse() == GaussianRational(1)
        assert a.conjugate() * a == GaussianRational(a.norm())
        assert I**2 == GaussianRational(-1)

    def test_division_by_zero(self):
        with pytest.raises(ZeroDivisionError):
            GaussianRational(1) / GaussianRational(0)

    @given(rationals, rationals, rationals, rationals)
    def test_matches_sympy(self, a, b, c, d):
        got = GaussianRational(a, b) * GaussianRational(c, d)
        want = sympy.expand((sympy.Rational(a) + sympy.I * b) * (sympy.Rational(c) + sympy.I * d))
        assert sympy.Rational(got.re) == sympy.re(want) and sympy.Rational(got.im) == sympy.im(want)


class TestArithmeticOracle:
    @given(polys, polys)
    def test_ring_ops_match_sympy(self, f, g):
        sf, sg = to_sympy(f), to_sympy(g)
        assert to_sympy(f + g) == sf + sg
        assert to_sympy(f - g) == sf - sg
        assert to_sympy(f * g) == sf * sg

    @given(polys, polys.filter(bool))
    def test_divmod_matches_sympy(self, f, g):
        q, r = divmod(f, g)
        sq, sr = sympy.div(to_sympy(f), to_sympy(g))
        assert to_sympy(q) == sq and to_sympy(r) == sr

    @given(polys, rationals)
    def test_horner_matches_sympy(self, f, x0):
        assert sympy.Rational(f(x0)) == to_sympy(f).eval(sympy.Rational(x0))

    def test_derivative(self):
        assert Poly([5, 3, 0, 2]).derivative() == Poly([3, 0, 6])

    def test_pow(self):
        assert (Poly([1, 1]) ** 3) == Poly([1, 3, 3, 1])
        with pytest.raises(ValueError):
            Poly([1, 1]) ** -1


class TestGcd:
    def test_example(self):
        assert gcd(Poly([-1, 0, 1]), Poly([1, 2, 1])) == Poly([1, 1])

    def test_coprime(self):
        assert gcd(Poly([1, 0, 1]), Poly([-1, 1])) == Poly([1])

    def test_zero_cases(self):
        assert gcd(Poly(), Poly([2, 4])) == Poly([F(1, 2), 1])
        with pytest.raises(ValueError):
            gcd(Poly(), Poly())

    def test_prem_identity(self):
        a, b = [1, 2, 3, 4], [5, 0, 7]
        r = prem(a, b)
        # lc(b)^(3-2+1) a = q b + r
        lhs = to_sympy(Poly([49 * c for c in a]))
        assert sympy.rem(lhs, to_sympy(Poly(b))) == to_sympy(Poly(r))

    @pytest.mark.parametrize("seed", range(40))
    def test_matches_sympy(self, seed):
        rng = random.Random(seed)
        common = random_poly(rng, rng.randint(0, 3))
        f = random_poly(rng, rng.randint(0, 5)) * common
        g = random_poly(rng, rng.randint(0, 5)) * common
        want = sympy.gcd(to_sympy(f), to_sympy(g)).monic()
        assert to_sympy(gcd(f, g)) == want

    def test_subresultant_is_primitive(self):
        g = subresultant_gcd([-6, 0, 6], [6, 12, 6])
        assert g == [1, 1]


class TestSquarefree:
    def test_example(self):
        p = Poly.from_roots([1, 1, -2, -2, -2, 0])
        chain = squarefree_chain(p)
        assert chain == [Poly.from_roots([1, -2, 0]), Poly.from_roots([1, -2]), Poly.from_roots([-2])]

    def test_constant_rejected(self):
        with pytest.raises(ValueError):
            squarefree_chain(Poly([3]))

    @pytest.mark.parametrize("seed", range(30))
    def test_matches_sympy_sqf(self, seed):
        rng = random.Random(1000 + seed)
        p = Poly([rng.choice([-3, 1, 2])])
        for _ in range(rng.randint(1, 4)):
            p = p * random_poly(rng, rng.randint(1, 2), height=6, den=1) ** rng.randint(1, 3)
        chain = squarefree_chain(p)
        # product of the chain is monic(p)
        prod = Poly([1])
        for f in chain:
            prod = prod * f
        assert prod == p.monic()
        # k-th element = product of sqf factors with multiplicity >= k
        _, factors = sympy.sqf_list(to_sympy(p))
        for k, f in enumerate(chain, start=1):
            want = sympy.Poly(1, X, domain="QQ")
            for g, m in factors:
                if m >= k:
                    want *= g
            assert to_sympy(f) == want.monic()
