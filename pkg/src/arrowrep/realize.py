"""Numeric realization of squared data, and exact pencil checks.

``realize_numeric`` takes the square roots (``h_i``, ``k_j + I l_j``) in
binary floating point and assembles the symmetric arrow-diagonal matrix.
The exact side works with :class:`Pencil` objects: rational pencils whose
determinant ``det(x J - A)`` is computed without any rounding.

Layout of one block (before an optional global negation)::

    complex pair j:  A[[mu, nu], [nu, -mu]],  J = (+1, -1),  arrow (k_j, l_j)
    real node i:     A = lambda_i,            J = +1,        arrow h_i
    special node:    A = lambda,              J = -1,        arrow h
    tail:            A = e,                   J = +1
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import mpmath
from mpmath.libmp import from_rational, round_nearest

from arrowrep.poly import Poly
from arrowrep.represent import MAIN, ArrowBlock, Representation
from arrowrep.sturm import count_real_roots_with_multiplicity

DEFAULT_PRECISION = 64


# -- shared layout ----------------------------------------------------------


def _block_layout(block: ArrowBlock, complex_entry, real_entry):
    """Entries ``{(i, j): value}`` of one block (upper triangle and diagonal), plus ``J``.

    ``complex_entry(node) -> (col, row)`` and ``real_entry(node) -> (col, row)``
    give the arrow entries above and below the diagonal.  Returns
    ``(entries, j_diag, provenance)`` with the block-local tail at index ``n-1``.
    """
    n = block.dimension
    t = n - 1
    entries: dict[tuple[int, int], object] = {}
    prov: dict[tuple[int, int], str] = {}
    j_diag: list[int] = []
    i = 0
    for idx, c in enumerate(block.complex_nodes):
        entries[(i, i)] = c.mu
        entries[(i + 1, i + 1)] = -c.mu
        entries[(i, i + 1)] = entries[(i + 1, i)] = c.nu
        prov[(i, i)] = f"mu[{idx}]"
        prov[(i + 1, i + 1)] = f"-mu[{idx}]"
        prov[(i, i + 1)] = prov[(i + 1, i)] = f"nu[{idx}]"
        (ck, cl), (rk, rl) = complex_entry(c)
        entries[(i, t)], entries[(i + 1, t)] = ck, cl
        entries[(t, i)], entries[(t, i + 1)] = rk, rl
        prov[(i, t)] = prov[(t, i)] = f"k[{idx}]"
        prov[(i + 1, t)] = prov[(t, i + 1)] = f"l[{idx}]"
        j_diag += [1, -1]
        i += 2
    nodes = list(block.real_nodes) if block.branch == MAIN else [block.special]
    sign = 1 if block.branch == MAIN else -1
    for idx, node in enumerate(nodes):
        entries[(i, i)] = node.lam
        col, row = real_entry(node)
        entries[(i, t)], entries[(t, i)] = col, row
        name = f"lambda[{idx}]" if sign > 0 else "special_lambda"
        hname = f"h[{idx}]" if sign > 0 else "special_h"
        prov[(i, i)] = name
        prov[(i, t)] = prov[(t, i)] = hname
        j_diag.append(sign)
        i += 1
    entries[(t, t)] = block.tail_e
    prov[(t, t)] = "e"
    j_diag.append(1)
    return entries, j_diag, prov


def _assemble(rep: Representation, complex_entry, real_entry, zero, negate):
    dim = rep.degree
    a = [[zero] * dim for _ in range(dim)]
    j_all: list[int] = []
    prov: dict[tuple[int, int], str] = {}
    off = 0
    for bi, block in enumerate(rep.blocks):
        entries, j_diag, bprov = _block_layout(block, complex_entry, real_entry)
        s = -1 if block.negated else 1
        for (i, j), v in entries.items():
            a[off + i][off + j] = negate(v) if s < 0 else v
        for (i, j), name in bprov.items():
            prov[(off + i, off + j)] = f"block[{bi}].{name}"
        j_all += [s * v for v in j_diag]
        off += block.dimension
    return a, j_all, prov


# -- numeric ------------------------------------------------------------------


@dataclass(frozen=True)
class NumericRealization:
    dimension: int
    j_diag: tuple[int, ...]
    a_entries: tuple[tuple[mpmath.mpf, ...], ...]
    provenance: dict = field(compare=False)
    precision_bits: int = DEFAULT_PRECISION

    def is_symmetric(self) -> bool:
        n = self.dimension
        return all(self.a_entries[i][j] == self.a_entries[j][i] for i in range(n) for j in range(i))


def _to_mpf(q: Fraction, prec: int) -> mpmath.mpf:
    return mpmath.mp.make_mpf(from_rational(q.numerator, q.denominator, prec, round_nearest))


def mpf_to_fraction(v) -> Fraction:
    if not isinstance(v, mpmath.mpf):
        v = mpmath.mpf(v)
    if not mpmath.isfinite(v):
        raise ValueError(f"non-finite value {v}")
    sign, man, exp, _ = v._mpf_
    out = Fraction(int(man)) * Fraction(2) ** exp
    return -out if sign else out


def principal_sqrt(re: Fraction, im: Fraction, prec: int) -> tuple[mpmath.mpf, mpmath.mpf]:
    """``(k, l)`` with ``(k + I l)^2 = re + I im``, ``k >= 0`` and ``l >= 0`` when ``k = 0``."""
    with mpmath.workprec(prec):
        w = mpmath.sqrt(mpmath.mpc(_to_mpf(re, prec), _to_mpf(im, prec)))
        k, l = +w.real, +w.imag
        if k == 0:
            l = abs(l)
        return k, l


def realize_numeric(rep: Representation, precision_bits: int = DEFAULT_PRECISION) -> NumericRealization:
    """Floating symmetric ``(A, J)`` with entries rounded to ``precision_bits`` mantissa bits."""
    prec = int(precision_bits)
    if prec < 8:
        raise ValueError("precision must be at least 8 bits")

    def real_entry(node):
        if node.h_sq < 0:
            raise ValueError(f"negative h^2 = {node.h_sq}")
        with mpmath.workprec(prec):
            h = mpmath.sqrt(_to_mpf(node.h_sq, prec))
        return h, h

    def complex_entry(node):
        k, l = principal_sqrt(node.sq_re, node.sq_im, prec)
        return (k, l), (k, l)

    def conv(v):
        return v if isinstance(v, mpmath.mpf) else _to_mpf(Fraction(v), prec)

    zero = mpmath.mpf(0)
    # unary minus on an mpf rounds to the ambient precision
    with mpmath.workprec(prec):
        a, j_diag, prov = _assemble(rep, complex_entry, real_entry, zero, lambda v: -conv(v))
        a = tuple(tuple(conv(v) for v in row) for row in a)
    return NumericRealization(rep.degree, tuple(j_diag), a, prov, prec)


def lu_det(m: list[list], prec: int):
    """Determinant by LU with partial pivoting at ``prec`` bits; exact zeros are skipped."""
    n = len(m)
    with mpmath.workprec(prec):
        m = [list(row) for row in m]
        det = mpmath.mpf(1)
        for k in range(n):
            piv = max(range(k, n), key=lambda i: abs(m[i][k]))
            if m[piv][k] == 0:
                return mpmath.mpf(0)
            if piv != k:
                m[k], m[piv] = m[piv], m[k]
                det = -det
            pk = m[k]
            det *= pk[k]
            cols = [j for j in range(k + 1, n) if pk[j] != 0]
            for i in range(k + 1, n):
                if m[i][k] == 0:
                    continue
                f = m[i][k] / pk[k]
                row = m[i]
                for j in cols:
                    row[j] -= f * pk[j]
        return det


def numeric_det(real: NumericRealization, x: Fraction):
    prec = real.precision_bits
    with mpmath.workprec(prec):
        xv = _to_mpf(Fraction(x), prec)
        m = [
            [(xv * real.j_diag[i] if i == j else 0) - real.a_entries[i][j] for j in range(real.dimension)]
            for i in range(real.dimension)
        ]
    return lu_det(m, prec)


def residual_check(
    real: NumericRealization, p: Poly, sample_points: Sequence[Fraction], scale: Fraction
) -> Fraction:
    """``max |det(xJ - A) - p(x)/c| / (1 + |p(x)/c|)`` over the samples, evaluated exactly."""
    if not sample_points:
        raise ValueError("need at least one sample point")
    worst = Fraction(0)
    for x in sample_points:
        target = p(Fraction(x)) / scale
        got = mpf_to_fraction(numeric_det(real, x))
        worst = max(worst, abs(got - target) / (1 + abs(target)))
    return worst


# -- exact pencils -----------------------------------------------------------


class PencilError(ValueError):
    pass


@dataclass(frozen=True)
class Pencil:
    """Exact rational pencil ``x J - A``.

    ``symmetric=False`` admits the determinant-equivalent squared-data form
    of a representation, which is not symmetric.
    """

    j_diag: tuple[int, ...]
    a: tuple[tuple[Fraction, ...], ...]
    symmetric: bool = True

    def __post_init__(self):
        j = tuple(int(v) for v in self.j_diag)
        a = tuple(tuple(Fraction(v) for v in row) for row in self.a)
        object.__setattr__(self, "j_diag", j)
        object.__setattr__(self, "a", a)
        n = len(j)
        if any(v not in (1, -1) for v in j):
            raise PencilError("J entries must be +1 or -1")
        if len(a) != n or any(len(row) != n for row in a):
            raise PencilError("A must be square with the dimension of J")
        if self.symmetric and any(a[i][k] != a[k][i] for i in range(n) for k in range(i)):
            raise PencilError("A is not symmetric")

    @property
    def dimension(self) -> int:
        return len(self.j_diag)

    @property
    def signature(self) -> tuple[int, int]:
        plus = sum(1 for v in self.j_diag if v > 0)
        return plus, self.dimension - plus


def squared_data_pencil(rep: Representation) -> Pencil:
    """Exact pencil with ``det(x J - A) = prod det`` of the blocks of ``rep``.

    The arrow column carries ``h_i^2`` (row entry 1) for real nodes and
    ``(A_j, B_j)`` (row entries ``(1, 0)``) for complex pairs; this is the
    realization conjugated so that no square root is needed.
    """
    a, j_diag, _ = _assemble(
        rep,
        complex_entry=lambda c: ((c.sq_re, c.sq_im), (Fraction(1), Fraction(0))),
        real_entry=lambda n: (n.h_sq, Fraction(1)),
        zero=Fraction(0),
        negate=lambda v: -v,
    )
    return Pencil(tuple(j_diag), tuple(tuple(row) for row in a), symmetric=False)


def adjoint_wrt_J(b: Sequence[Sequence[Fraction]], j_diag: Sequence[int]) -> list[list[Fraction]]:
    """``J B^T J``."""
    n = len(j_diag)
    if len(b) != n or any(len(row) != n for row in b):
        raise PencilError("dimension mismatch between B and J")
    return [[j_diag[i] * b[k][i] * j_diag[k] for k in range(n)] for i in range(n)]


def bareiss_det(m: list[list[Poly]]) -> Poly:
    """Fraction-free determinant of a matrix of polynomials."""
    n = len(m)
    if n == 0:
        return Poly.const(1)
    m = [list(row) for row in m]
    sign = 1
    prev = Poly.const(1)
    for k in range(n - 1):
        if m[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not m[i][k].is_zero()), None)
            if swap is None:
                return Poly()
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        pk = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            for j in range(k + 1, n):
                num = pk * m[i][j] - mik * m[k][j]
                q, r = divmod(num, prev)
                assert r.is_zero(), "Bareiss division must be exact"
                m[i][j] = q
        prev = pk
    det = m[n - 1][n - 1]
    return -det if sign < 0 else det


def _gauss_det(rows: list[list[Fraction]]) -> Fraction:
    """Exact determinant by Gaussian elimination over the rationals, skipping zeros."""
    n = len(rows)
    m = [list(r) for r in rows]
    det = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if m[i][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            det = -det
        pk = m[k]
        det *= pk[k]
        cols = [j for j in range(k + 1, n) if pk[j] != 0]
        for i in range(k + 1, n):
            if m[i][k] == 0:
                continue
            f = m[i][k] / pk[k]
            row = m[i]
            for j in cols:
                row[j] -= f * pk[j]
    return det


def _interpolate(xs: Sequence[int], ys: Sequence[Fraction]) -> Poly:
    """Newton interpolation through ``(xs, ys)``."""
    coef = list(ys)
    n = len(xs)
    for level in range(1, n):
        for i in range(n - 1, level - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - level])
    out = Poly.const(coef[-1])
    for i in range(n - 2, -1, -1):
        out = out * Poly((-xs[i], 1)) + coef[i]
    return out


def pencil_determinant(pencil: Pencil, bareiss_max_dim: int = 8) -> Poly:
    """``det(x J - A)`` exactly.

    Small pencils use Bareiss over polynomial entries; larger ones evaluate
    at ``n + 1`` integer points by exact elimination and interpolate.
    """
    n = pencil.dimension
    j, a = pencil.j_diag, pencil.a
    if n <= bareiss_max_dim:
        x = Poly.x()
        m = [[(x * j[i] if i == k else Poly()) - a[i][k] for k in range(n)] for i in range(n)]
        return bareiss_det(m)
    xs = list(range(n + 1))
    ys = []
    for t in xs:
        rows = [[(t * j[i] if i == k else 0) - a[i][k] for k in range(n)] for i in range(n)]
        ys.append(_gauss_det(rows))
    return _interpolate(xs, ys)


def real_eigen_count_lower_bound_check(pencil: Pencil) -> tuple[int, int, bool]:
    """``(r_claimed, r_found, r_found >= r_claimed)`` for ``det(x J - A)``."""
    plus, minus = pencil.signature
    r_claimed = plus - minus
    det = pencil_determinant(pencil)
    r_found = count_real_roots_with_multiplicity(det) if not det.is_constant() else 0
    return r_claimed, r_found, r_found >= r_claimed
