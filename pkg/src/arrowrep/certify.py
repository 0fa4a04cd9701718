"""Exact certification of arrow-diagonal representations.

The determinant of one block is expanded in closed form from its squared
data (a Schur complement against the diagonal part), so certification is
pure rational arithmetic.

For a ``main`` block with ``u = prod (x - lambda_i)`` and
``v = prod -((x - mu_j)^2 + nu_j^2)``::

    q = (x - e) u v - v sum h_i^2 u/(x - lambda_i)
        - u sum [-(x - mu_j) A_j + nu_j B_j] v/(-((x - mu_j)^2 + nu_j^2))

For a ``no_real`` block the real part of the diagonal is the single entry
``-x - lambda`` (its ``J`` entry is ``-1``), which gives::

    q = (-x - lambda)(x - e) v - (-x - lambda) sum [...] v_j - h^2 v
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from arrowrep.poly import Poly
from arrowrep.represent import MAIN, ArrowBlock, Representation

_X = Poly.x()
_ONE = Poly.const(1)


def product_tree(factors: Sequence[Poly]) -> Poly:
    """Balanced product; keeps intermediate coefficient sizes small."""
    if not factors:
        return _ONE
    layer = list(factors)
    while len(layer) > 1:
        nxt = [layer[i] * layer[i + 1] for i in range(0, len(layer) - 1, 2)]
        if len(layer) % 2:
            nxt.append(layer[-1])
        layer = nxt
    return layer[0]


def _complex_part(block: ArrowBlock) -> tuple[Poly, Poly]:
    """``(v, sum_j [-(x - mu_j) A_j + nu_j B_j] v_j)``."""
    factors = [-((_X - c.mu) ** 2 + Poly.const(c.nu * c.nu)) for c in block.complex_nodes]
    v = product_tree(factors)
    acc = Poly.const(0)
    for c, fac in zip(block.complex_nodes, factors):
        lin = (_X - c.mu).scale(-c.sq_re) + Poly.const(c.nu * c.sq_im)
        acc = acc + lin * (v // fac)
    return v, acc


def expand_block(block: ArrowBlock) -> Poly:
    """``det(x J - A)`` of one block, exactly."""
    v, cpart = _complex_part(block)
    if block.branch == MAIN:
        lin = [_X - n.lam for n in block.real_nodes]
        u = product_tree(lin)
        hsum = Poly.const(0)
        for n, fac in zip(block.real_nodes, lin):
            if n.h_sq:
                hsum = hsum + (u // fac).scale(n.h_sq)
        q = (_X - block.tail_e) * u * v - v * hsum - u * cpart
    else:
        sp = block.special
        w = -_X - sp.lam
        q = w * (_X - block.tail_e) * v - w * cpart - v.scale(sp.h_sq)
    if block.negated and block.dimension % 2:
        q = -q
    return q


def expand_arrow_real(
    lambdas: Sequence[Fraction], h: Sequence[Fraction], k: Sequence[Fraction], d: Fraction
) -> Poly:
    """``det`` of the real arrow matrix ``[[diag(lambda), h], [k^T, d]]`` pencil.

    Equals ``(x - d) prod (x - lambda_i) - sum h_i k_i prod_{j != i} (x - lambda_j)``.
    """
    if not len(lambdas) == len(h) == len(k):
        raise ValueError("lambdas, h and k must have equal length")
    lin = [_X - Fraction(lam) for lam in lambdas]
    out = (_X - Fraction(d)) * product_tree(lin)
    for i in range(len(lin)):
        others = product_tree(lin[:i] + lin[i + 1 :])
        out = out - others.scale(Fraction(h[i]) * Fraction(k[i]))
    return out


def expand_representation(rep: Representation) -> Poly:
    """``scale * prod_b det(x J_b - A_b)``."""
    return product_tree([expand_block(b) for b in rep.blocks]).scale(rep.scale)


@dataclass(frozen=True)
class CertifyResult:
    ok: bool
    first_mismatch_degree: int | None = None
    expected: Fraction | None = None
    got: Fraction | None = None

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> dict:
        if self.ok:
            return {"ok": True}
        return {
            "ok": False,
            "first_mismatch_degree": self.first_mismatch_degree,
            "expected": _frac_str(self.expected),
            "got": _frac_str(self.got),
        }


def _frac_str(v: Fraction) -> str:
    return f"{v.numerator}/{v.denominator}"


def certify_representation(p: Poly, rep: Representation) -> CertifyResult:
    """Exact coefficientwise comparison of ``p`` with the expanded representation.

    The first mismatch is reported from the top degree down.
    """
    try:
        got = expand_representation(rep)
    except (ValueError, ZeroDivisionError):
        return CertifyResult(False, None, None, None)
    n = max(len(p.coeffs), len(got.coeffs))
    for k in range(n - 1, -1, -1):
        a, b = p.coeff(k), got.coeff(k)
        if a != b:
            return CertifyResult(False, k, a, b)
    return CertifyResult(True)
