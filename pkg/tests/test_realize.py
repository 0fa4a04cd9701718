from __future__ import annotations

import random
from fractions import Fraction as F

import mpmath
import pytest

from arrowrep.parser import parse_poly
from arrowrep.poly import Poly
from arrowrep.realize import (
    Pencil,
    PencilError,
    adjoint_wrt_J,
    bareiss_det,
    lu_det,
    mpf_to_fraction,
    pencil_determinant,
    principal_sqrt,
    real_eigen_count_lower_bound_check,
    realize_numeric,
    residual_check,
    squared_data_pencil,
)
from arrowrep.represent import MAIN, ArrowBlock, RealNode, Representation, represent
from arrowrep.sturm import count_real_roots_with_multiplicity
from corpus import corpus


def _floats(real):
    return [[float(v) for v in row] for row in real.a_entries]


class TestRealize:
    def test_x3_minus_x(self):
        real = realize_numeric(represent(parse_poly("x^3-x")))
        h = (3 / 8) ** 0.5
        flat = [v for row in _floats(real) for v in row]
        assert flat == pytest.approx([-0.5, 0, h, 0, 0.5, h, h, h, 0], abs=1e-15)
        assert real.j_diag == (1, 1, 1) and real.is_symmetric()
        assert real.provenance[(0, 2)] == "block[0].h[0]"

    def test_x2_plus_1(self):
        real = realize_numeric(represent(parse_poly("x^2+1")))
        assert _floats(real) == [[0, 1], [1, 0]] and real.j_diag == (-1, 1)

    def test_zero_square(self):
        rep = Representation.from_blocks([ArrowBlock(MAIN, (), (RealNode(F(0), F(0)),), F(0))], F(1))
        assert realize_numeric(rep).a_entries[0][1] == 0

    def test_signature_matches_j(self):
        rep = represent(parse_poly("(x^2-2)*(x^2+1)*(x+5)^2"))
        real = realize_numeric(rep)
        assert (real.j_diag.count(1), real.j_diag.count(-1)) == rep.signature

    def test_branch(self):
        assert principal_sqrt(F(-4), F(0), 64) == (0, 2)
        k, l = principal_sqrt(F(0), F(2), 64)
        assert k == 1 and l == 1
        k, l = principal_sqrt(F(0), F(-2), 64)
        assert k == 1 and l == -1

    def test_low_precision_rejected(self):
        with pytest.raises(ValueError):
            realize_numeric(represent(parse_poly("x")), 4)


class TestResidual:
    def test_x3_minus_x(self):
        p = parse_poly("x^3-x")
        rep = represent(p)
        assert residual_check(realize_numeric(rep), p, [F(2), F(-3), F(1, 3)], rep.scale) <= F(1, 10**9)

    def test_x2_plus_1_exact(self):
        p = parse_poly("x^2+1")
        rep = represent(p)
        assert residual_check(realize_numeric(rep), p, [F(0)], rep.scale) == 0

    def test_empty_samples(self):
        p = parse_poly("x")
        with pytest.raises(ValueError):
            residual_check(realize_numeric(represent(p)), p, [], F(1))

    @pytest.mark.parametrize("sample", corpus(10, seed=51, max_degree=14), ids=lambda s: f"deg{len(s.poly.coeffs) - 1}")
    def test_more_bits_do_not_hurt(self, sample):
        rep = represent(sample.poly)
        pts = [F(k, 3) for k in range(-4, 4)]
        r64 = residual_check(realize_numeric(rep, 64), sample.poly, pts, rep.scale)
        r128 = residual_check(realize_numeric(rep, 128), sample.poly, pts, rep.scale)
        assert r128 <= r64

    def test_lu_det(self):
        m = [[mpmath.mpf(v) for v in row] for row in ([0, 2], [3, 1])]
        assert lu_det(m, 64) == -6
        assert mpf_to_fraction(mpmath.mpf(-0.75)) == F(-3, 4)


class TestAdjoint:
    def test_example(self):
        assert adjoint_wrt_J([[0, 1], [0, 0]], [1, -1]) == [[0, 0], [-1, 0]]

    def test_identity_j_is_transpose(self):
        b = [[1, 2], [3, 4]]
        assert adjoint_wrt_J(b, [1, 1]) == [[1, 3], [2, 4]]

    def test_involution(self):
        rng = random.Random(2)
        b = [[F(rng.randint(-5, 5)) for _ in range(4)] for _ in range(4)]
        j = [1, -1, -1, 1]
        assert adjoint_wrt_J(adjoint_wrt_J(b, j), j) == b

    def test_mismatch(self):
        with pytest.raises(PencilError):
            adjoint_wrt_J([[1]], [1, 1])


class TestPencil:
    def test_diagonal(self):
        pen = Pencil((1, 1, -1), ((1, 0, 0), (0, 2, 0), (0, 0, 3)))
        assert pencil_determinant(pen) == Poly.from_roots([1, 2]) * Poly([-3, -1])
        assert real_eigen_count_lower_bound_check(pen) == (1, 3, True)

    def test_cubic(self):
        pen = Pencil((1, -1, 1), ((0, 1, 0), (1, 0, 0), (0, 0, 1)))
        assert pencil_determinant(pen) == parse_poly("-(x-1)*(x^2+1)")
        assert real_eigen_count_lower_bound_check(pen) == (1, 1, True)

    def test_spectral_case(self):
        rng = random.Random(4)
        for n in range(1, 6):
            a = [[F(0)] * n for _ in range(n)]
            for i in range(n):
                for k in range(i, n):
                    a[i][k] = a[k][i] = F(rng.randint(-5, 5), rng.randint(1, 3))
            assert real_eigen_count_lower_bound_check(Pencil((1,) * n, a))[1] == n

    def test_validation(self):
        with pytest.raises(PencilError):
            Pencil((1, 1), ((0, 1), (2, 0)))
        with pytest.raises(PencilError):
            Pencil((1, 0), ((0, 0), (0, 0)))
        with pytest.raises(PencilError):
            Pencil((1,), ((0, 0),))

    def test_bareiss_matches_interpolation(self):
        rng = random.Random(8)
        for _ in range(20):
            n = rng.randint(1, 6)
            a = [[F(rng.randint(-4, 4)) for _ in range(n)] for _ in range(n)]
            pen = Pencil(tuple(rng.choice([1, -1]) for _ in range(n)), a, symmetric=False)
            assert pencil_determinant(pen) == pencil_determinant(pen, bareiss_max_dim=0)

    def test_bareiss_pivoting(self):
        x = Poly.x()
        m = [[Poly(), Poly([1])], [Poly([1]), x]]
        assert bareiss_det(m) == Poly([-1])
        assert bareiss_det([]) == Poly([1])

    def test_aj_self_adjoint(self):
        rng = random.Random(9)
        n = 5
        a = [[F(0)] * n for _ in range(n)]
        for i in range(n):
            for k in range(i, n):
                a[i][k] = a[k][i] = F(rng.randint(-5, 5))
        j = [1, -1, 1, -1, -1]
        aj = [[a[i][k] * j[k] for k in range(n)] for i in range(n)]
        # J (AJ)^T J = J J A J = A J
        assert adjoint_wrt_J(aj, j) == aj


class TestSquaredDataPencil:
    @pytest.mark.parametrize("sample", corpus(15, seed=61, max_degree=16), ids=lambda s: f"deg{len(s.poly.coeffs) - 1}")
    def test_sharp_on_constructed(self, sample):
        rep = represent(sample.poly)
        pen = squared_data_pencil(rep)
        assert pencil_determinant(pen).scale(rep.scale) == sample.poly
        r_claimed, r_found, ok = real_eigen_count_lower_bound_check(pen)
        assert ok and r_found == r_claimed == sample.real_roots == count_real_roots_with_multiplicity(sample.poly)
