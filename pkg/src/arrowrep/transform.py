"""Walking down the signature hierarchy ``(r + s, s) -> (r + s - 1, s + 1)``.

Three routes are available:

* ``case_a``: global negation ``(J, A) -> (-J, -A)``, which swaps the signature;
  exact for any representation and used whenever ``r = 1``.
* the closed-form rewrites of the squared data (``case_b_formula`` when the
  chosen block has two real roots, ``case_c_formula`` otherwise); their output
  is never trusted and goes through the exact certifier.
* ``reinterpolation``: rebuild from scratch with a smaller real-node budget.
  This always works and is the fallback for rejected formulas.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, replace
from fractions import Fraction

from arrowrep.certify import CertifyResult, certify_representation, expand_block, expand_representation
from arrowrep.poly import GaussianRational, Poly
from arrowrep.represent import (
    MAIN,
    NO_REAL,
    ArrowBlock,
    ComplexNode,
    RealNode,
    Representation,
    RepresentationError,
    _main_tail,
    complex_factor,
    represent,
)

log = logging.getLogger(__name__)

CASE_A = "case_a"
CASE_B = "case_b_formula"
CASE_C = "case_c_formula"
REINTERPOLATION = "reinterpolation"


class ShiftPreconditionError(ValueError):
    """No lower signature is reachable (``p_plus - p_minus <= 0``)."""


@dataclass(frozen=True)
class ShiftReport:
    method: str
    certified: bool
    erratum_note: str | None = None

    def to_json(self) -> dict:
        return {"method": self.method, "certified": self.certified, "erratum_note": self.erratum_note}


@dataclass(frozen=True)
class FormulaRejected:
    """The closed-form rewrite did not reproduce ``p``."""

    method: str
    reason: str
    diagnostic: CertifyResult | None = None

    def __bool__(self) -> bool:
        return False


def shift_case_a(rep: Representation) -> Representation:
    """Negate every block: ``p = (-1)^d c det(x(-J) - (-A))``; signature is swapped."""
    blocks = [b.negate() for b in rep.blocks]
    return Representation.from_blocks(blocks, rep.scale * (-1) ** rep.degree)


def _pick_block(rep: Representation) -> int | None:
    for i, b in enumerate(rep.blocks):
        if b.branch == MAIN and not b.negated and b.real_nodes:
            return i
    return None


def _fresh_nu(block: ArrowBlock) -> Fraction:
    taken = {(c.mu, abs(c.nu)) for c in block.complex_nodes}
    nu = Fraction(len(block.complex_nodes) + 1)
    while (Fraction(0), nu) in taken:
        nu += 1
    return nu


def _case_b(block: ArrowBlock) -> ArrowBlock:
    # k' = l, l' = -k turns (k + I l)^2 into -(k + I l)^2
    (node,) = block.real_nodes
    cnodes = tuple(replace(c, sq_re=-c.sq_re, sq_im=-c.sq_im) for c in block.complex_nodes)
    return ArrowBlock(NO_REAL, cnodes, (), block.tail_e, special=RealNode(-node.lam, node.h_sq))


def _case_c(block: ArrowBlock) -> ArrowBlock:
    l1, l2 = block.real_nodes[0].lam, block.real_nodes[1].lam
    kept = block.real_nodes[2:]
    mu_new, nu_new = Fraction(0), _fresh_nu(block)

    reals = []
    for n in kept:
        fac = (n.lam - l1) * (n.lam - l2) / complex_factor(n.lam, mu_new, nu_new)
        reals.append(RealNode(n.lam, n.h_sq * fac))  # raises on a negative square

    cnodes = []
    for c in block.complex_nodes:
        z = c.point
        fac = (z - l1) * (z - l2) / complex_factor(z, mu_new, nu_new)
        sq = c.square * fac
        cnodes.append(ComplexNode(c.mu, c.nu, sq.re, sq.im))

    q_old = expand_block(block)
    z = GaussianRational(mu_new, nu_new)
    den = GaussianRational(0, nu_new)
    for n in kept:
        den = den * (z - n.lam)
    for c in block.complex_nodes:
        den = den * complex_factor(z, c.mu, c.nu)
    conj_sq = q_old(z) / den
    cnodes.append(ComplexNode(mu_new, nu_new, conj_sq.re, -conj_sq.im))

    # e' from the trace of the new target -q_old
    e = _main_tail(-q_old, [n.lam for n in reals], [c.mu for c in cnodes])
    return ArrowBlock(MAIN, tuple(cnodes), tuple(reals), e)


def shift_formula(rep: Representation, p: Poly | None = None) -> Representation | FormulaRejected:
    """Apply the closed-form squared-data rewrite to the first eligible block, then certify."""
    p = expand_representation(rep) if p is None else p
    idx = _pick_block(rep)
    if idx is None:
        return FormulaRejected(CASE_B, "no un-negated block with two or more real roots")
    block = rep.blocks[idx]
    method = CASE_B if len(block.real_nodes) == 1 else CASE_C
    try:
        new_block = _case_b(block) if method == CASE_B else _case_c(block)
    except (RepresentationError, ZeroDivisionError) as exc:
        return FormulaRejected(method, f"rewrite failed: {exc}")
    blocks = list(rep.blocks)
    blocks[idx] = new_block
    candidate = Representation.from_blocks(blocks, -rep.scale)
    result = certify_representation(p, candidate)
    if not result:
        return FormulaRejected(method, "certification failed", result)
    return candidate


def shift_reinterpolate(p: Poly, target_sig: tuple[int, int]) -> Representation:
    """Fresh representation of ``p`` with the requested signature."""
    plus, minus = target_sig
    if plus + minus != len(p.coeffs) - 1 or plus < 0 or minus < 0:
        raise ShiftPreconditionError(f"signature {target_sig} does not fit degree {len(p.coeffs) - 1}")
    rep = represent(p, real_target=plus - minus)
    result = certify_representation(p, rep)
    if not result:
        raise RepresentationError(f"reinterpolation did not certify: {result}")
    return rep


def shift(rep: Representation, p: Poly | None = None) -> tuple[Representation, ShiftReport]:
    """One step down the hierarchy; the output is always certified."""
    p = expand_representation(rep) if p is None else p
    r = rep.real_count
    if r <= 0:
        raise ShiftPreconditionError(f"p_plus - p_minus = {r}; no lower signature via this shift")
    if r == 1:
        out = shift_case_a(rep)
        report = ShiftReport(CASE_A, bool(certify_representation(p, out)))
    else:
        attempt = shift_formula(rep, p)
        if isinstance(attempt, FormulaRejected):
            note = f"{attempt.method} rejected: {attempt.reason}"
            if attempt.diagnostic is not None and attempt.diagnostic.first_mismatch_degree is not None:
                d = attempt.diagnostic
                note += f" (degree {d.first_mismatch_degree}: expected {d.expected}, got {d.got})"
            log.info("formula shift fell back to reinterpolation: %s", note)
            plus, minus = rep.signature
            out = shift_reinterpolate(p, (plus - 1, minus + 1))
            report = ShiftReport(REINTERPOLATION, True, note)
        else:
            out = attempt
            method = CASE_B if len(rep.blocks[_pick_block(rep)].real_nodes) == 1 else CASE_C
            report = ShiftReport(method, True)
    if not report.certified:
        raise RepresentationError("shift produced an uncertified representation")
    return out, report


def shift_chain_reports(p: Poly) -> list[tuple[Representation, ShiftReport | None]]:
    """Chain from the maximal signature ``(r + s, s)`` down to ``(s, r + s)``.

    Steps that reach a nonpositive ``p_plus - p_minus`` reuse an earlier
    element with mirrored signature and negate it (``case_a``).
    """
    rep = represent(p)
    chain: list[tuple[Representation, ShiftReport | None]] = [(rep, None)]
    r = rep.real_count
    if r == 0:
        return chain
    by_sig = {rep.signature: rep}
    for _ in range(r):
        cur = chain[-1][0]
        plus, minus = cur.signature
        if cur.real_count >= 2:
            nxt, report = shift(cur, p)
        else:
            mirror = by_sig[(minus + 1, plus - 1)]
            nxt = shift_case_a(mirror)
            report = ShiftReport(CASE_A, bool(certify_representation(p, nxt)))
            if not report.certified:
                raise RepresentationError("negated representation failed to certify")
        by_sig[nxt.signature] = nxt
        chain.append((nxt, report))
    return chain


def shift_chain(p: Poly) -> list[Representation]:
    """Certified representations of ``p`` for every signature from ``(r+s, s)`` to ``(s, r+s)``."""
    return [rep for rep, _ in shift_chain_reports(p)]
