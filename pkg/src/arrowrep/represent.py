"""Arrow-diagonal determinantal representations ``p = c * prod det(x J_b - A_b)``.

Each squarefree factor of ``p`` gets one arrow block.  A block is stored as
*squared data*: the real nodes ``lambda_i`` with ``h_i^2``, the complex nodes
``(mu_j, nu_j)`` with ``A_j + B_j I = (k_j + l_j I)^2`` and the tail ``e``.
Every coefficient of the block determinant is a polynomial in these
rationals, so a representation can be certified exactly without ever taking
a square root.

Block layouts (rows in order, with the signature entry of ``J``)::

    main     complex pairs (+1, -1) ...,  real nodes +1 ...,  tail +1
    no_real  complex pairs (+1, -1) ...,  special node -1,     tail +1

A ``negated`` block stands for ``(-J_b, -A_b)``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterator, Sequence

from arrowrep.poly import GaussianRational, Poly, reciprocal, squarefree_chain
from arrowrep.sturm import RootInterval, refine_interval, count_real_roots, isolate_real_roots, select_interlacing_nodes

MAIN = "main"
NO_REAL = "no_real"


class RepresentationError(ValueError):
    """A construction precondition failed (bad nodes, negative square, ...)."""


class InterlacingError(RepresentationError):
    """An interpolated ``h^2`` came out negative."""


@dataclass(frozen=True)
class RealNode:
    lam: Fraction
    h_sq: Fraction

    def __post_init__(self):
        if self.h_sq < 0:
            raise InterlacingError(f"h^2 = {self.h_sq} < 0 at lambda = {self.lam}")


@dataclass(frozen=True)
class ComplexNode:
    mu: Fraction
    nu: Fraction
    sq_re: Fraction
    sq_im: Fraction

    def __post_init__(self):
        if self.nu == 0:
            raise RepresentationError("complex node needs nu != 0")

    @property
    def point(self) -> GaussianRational:
        return GaussianRational(self.mu, self.nu)

    @property
    def square(self) -> GaussianRational:
        return GaussianRational(self.sq_re, self.sq_im)


@dataclass(frozen=True)
class ArrowBlock:
    branch: str
    complex_nodes: tuple[ComplexNode, ...] = ()
    real_nodes: tuple[RealNode, ...] = ()
    tail_e: Fraction = Fraction(0)
    special: RealNode | None = None
    negated: bool = False

    def __post_init__(self):
        object.__setattr__(self, "complex_nodes", tuple(self.complex_nodes))
        object.__setattr__(self, "real_nodes", tuple(self.real_nodes))
        if self.branch == MAIN:
            if self.special is not None:
                raise RepresentationError("main block has no special node")
        elif self.branch == NO_REAL:
            if self.special is None or self.real_nodes:
                raise RepresentationError("no_real block needs a special node and no real nodes")
        else:
            raise RepresentationError(f"unknown branch {self.branch!r}")
        _check_distinct([n.lam for n in self.real_nodes], self.complex_nodes)

    @property
    def dimension(self) -> int:
        n = len(self.real_nodes) + 2 * len(self.complex_nodes) + 1
        return n + 1 if self.branch == NO_REAL else n

    @property
    def signature(self) -> tuple[int, int]:
        s = len(self.complex_nodes)
        if self.branch == MAIN:
            sig = (len(self.real_nodes) + s + 1, s)
        else:
            sig = (s + 1, s + 1)
        return sig[::-1] if self.negated else sig

    @property
    def real_count(self) -> int:
        """``p_plus - p_minus`` of this block."""
        plus, minus = self.signature
        return plus - minus

    def j_diag(self) -> list[int]:
        j = [1, -1] * len(self.complex_nodes)
        if self.branch == MAIN:
            j += [1] * len(self.real_nodes) + [1]
        else:
            j += [-1, 1]
        return [-v for v in j] if self.negated else j

    def negate(self) -> ArrowBlock:
        return replace(self, negated=not self.negated)


def _check_distinct(lams: Sequence[Fraction], cnodes: Sequence[ComplexNode]) -> None:
    if len(set(lams)) != len(lams):
        raise RepresentationError("real nodes collide")
    keys = [(c.mu, abs(c.nu)) for c in cnodes]
    if len(set(keys)) != len(keys):
        raise RepresentationError("complex nodes collide")


@dataclass(frozen=True)
class Representation:
    """``p(x) = scale * prod_b det(x J_b - A_b)`` with signature ``(p_plus, p_minus)``."""

    blocks: tuple[ArrowBlock, ...]
    scale: Fraction
    signature: tuple[int, int] = field(default=(0, 0))

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(self.blocks))
        if self.scale == 0:
            raise RepresentationError("scale must be nonzero")
        plus = sum(b.signature[0] for b in self.blocks)
        minus = sum(b.signature[1] for b in self.blocks)
        if tuple(self.signature) != (plus, minus):
            raise RepresentationError(
                f"declared signature {tuple(self.signature)} != block signature {(plus, minus)}"
            )
        object.__setattr__(self, "signature", (plus, minus))

    @classmethod
    def from_blocks(cls, blocks: Sequence[ArrowBlock], scale: Fraction) -> Representation:
        plus = sum(b.signature[0] for b in blocks)
        minus = sum(b.signature[1] for b in blocks)
        return cls(tuple(blocks), Fraction(scale), (plus, minus))

    @property
    def degree(self) -> int:
        return sum(self.signature)

    @property
    def real_count(self) -> int:
        return self.signature[0] - self.signature[1]


# -- helpers ---------------------------------------------------------------


def _prod(values, start):
    acc = start
    for v in values:
        acc = acc * v
    return acc


def complex_factor(z, node_mu: Fraction, node_nu: Fraction):
    """``-((z - mu)^2 + nu^2)``, the determinant of one complex 2x2 pencil block."""
    w = z - node_mu
    return -(w * w + node_nu * node_nu)


def normalize_target(p: Poly, s_total: int) -> tuple[Poly, Fraction]:
    """Split ``p = scale * p_norm`` with ``lc(p_norm) = (-1)^s_total``."""
    if p.is_constant():
        raise RepresentationError("cannot normalize a constant polynomial")
    scale = p.lc * (-1) ** s_total
    return p.scale(1 / scale), scale


def _main_tail(f: Poly, lams: Sequence[Fraction], mus: Sequence[Fraction]) -> Fraction:
    """Tail ``e`` matching the ``x^(d-1)`` coefficient of a main block."""
    s = len(mus)
    d = len(f.coeffs) - 1
    return -((-1) ** s) * f.coeff(d - 1) - sum(lams, Fraction(0)) - 2 * sum(mus, Fraction(0))


def _no_real_tail(f: Poly, lam: Fraction, mus: Sequence[Fraction]) -> Fraction:
    """Tail ``e`` matching the ``x^(d-1)`` coefficient of a no_real block.

    The leading part is ``(-x - lam)(x - e) v(x)``, whose ``x^(d-1)``
    coefficient is ``(-1)^(s-1) (e - lam + 2 sum mu)``.
    """
    s_minus_1 = len(mus)
    d = len(f.coeffs) - 1
    return (-1) ** s_minus_1 * f.coeff(d - 1) + lam - 2 * sum(mus, Fraction(0))


def build_block_main(
    f: Poly,
    nodes_real: Sequence[Fraction],
    nodes_complex: Sequence[tuple[Fraction, Fraction]],
) -> ArrowBlock:
    """Interpolate an arrow block with ``det(x J - A) = f``.

    ``f`` must have leading coefficient ``(-1)^s`` with ``s = len(nodes_complex)``
    and degree ``len(nodes_real) + 2 s + 1``.  Real nodes must interlace the
    real roots of ``f`` for the ``h_i^2`` to be nonnegative.
    """
    lams = [Fraction(v) for v in nodes_real]
    cpts = [(Fraction(m), Fraction(n)) for m, n in nodes_complex]
    s = len(cpts)
    if len(f.coeffs) - 1 != len(lams) + 2 * s + 1:
        raise RepresentationError("degree does not match node counts")
    if f.lc != (-1) ** s:
        raise RepresentationError(f"leading coefficient must be {(-1) ** s}")
    if len(set(lams)) != len(lams):
        raise RepresentationError("real nodes collide")
    if any(n == 0 for _, n in cpts) or len({(m, abs(n)) for m, n in cpts}) != s:
        raise RepresentationError("complex nodes must have nu != 0 and be distinct")

    real_nodes = []
    for i, lam in enumerate(lams):
        u_i = _prod((lam - other for k, other in enumerate(lams) if k != i), Fraction(1))
        v = _prod((complex_factor(lam, m, n) for m, n in cpts), Fraction(1))
        h_sq = -f(lam) / (v * u_i)
        if h_sq < 0:
            raise InterlacingError(f"h^2 = {h_sq} < 0 at lambda = {lam}; nodes do not interlace")
        real_nodes.append(RealNode(lam, h_sq))

    complex_nodes = []
    for j, (mu, nu) in enumerate(cpts):
        z = GaussianRational(mu, nu)
        u = _prod((z - lam for lam in lams), GaussianRational(1))
        v_j = _prod(
            (complex_factor(z, m, n) for k, (m, n) in enumerate(cpts) if k != j), GaussianRational(1)
        )
        sq = f(z) / (GaussianRational(0, nu) * u * v_j)
        complex_nodes.append(ComplexNode(mu, nu, sq.re, sq.im))

    e = _main_tail(f, lams, [m for m, _ in cpts])
    return ArrowBlock(MAIN, tuple(complex_nodes), tuple(real_nodes), e)


def build_block_no_real(
    f: Poly,
    nodes_complex: Sequence[tuple[Fraction, Fraction]],
    special_node: Fraction,
) -> ArrowBlock:
    """Arrow block with the ``(-1) + (+1)`` tail pattern for ``f`` of degree ``2 s``.

    ``nodes_complex`` holds ``s - 1`` points; ``h^2`` comes from
    interpolating at ``x = -special_node``.
    """
    lam = Fraction(special_node)
    cpts = [(Fraction(m), Fraction(n)) for m, n in nodes_complex]
    s = len(cpts) + 1
    if len(f.coeffs) - 1 != 2 * s:
        raise RepresentationError("degree does not match node counts")
    if f.lc != (-1) ** s:
        raise RepresentationError(f"leading coefficient must be {(-1) ** s}")
    if any(n == 0 for _, n in cpts) or len({(m, abs(n)) for m, n in cpts}) != len(cpts):
        raise RepresentationError("complex nodes must have nu != 0 and be distinct")

    v_at = _prod((complex_factor(-lam, m, n) for m, n in cpts), Fraction(1))
    h_sq = -f(-lam) / v_at
    if h_sq < 0:
        raise InterlacingError(f"h^2 = {h_sq} < 0 for special node {lam}")

    complex_nodes = []
    for j, (mu, nu) in enumerate(cpts):
        z = GaussianRational(mu, nu)
        v_j = _prod(
            (complex_factor(z, m, n) for k, (m, n) in enumerate(cpts) if k != j), GaussianRational(1)
        )
        sq = f(z) / (GaussianRational(0, nu) * (-z - lam) * v_j)
        complex_nodes.append(ComplexNode(mu, nu, sq.re, sq.im))

    e = _no_real_tail(f, lam, [m for m, _ in cpts])
    return ArrowBlock(NO_REAL, tuple(complex_nodes), (), e, special=RealNode(lam, h_sq))


def special_node_candidates() -> Iterator[Fraction]:
    """``0, 1, -1, 1/2, -1/2, 2, -2, 1/4, -1/4, 4, -4, ...``"""
    yield Fraction(0)
    yield Fraction(1)
    yield Fraction(-1)
    for k in itertools.count(1):
        for mag in (Fraction(1, 2**k), Fraction(2**k)):
            yield mag
            yield -mag


def default_complex_nodes(s: int, f: Poly | None = None) -> list[tuple[Fraction, Fraction]]:
    """Nodes ``(0, 1), (0, 2), ...``; with ``f`` given, ``nu`` values where ``f(I nu) = 0`` are skipped."""
    out = []
    nu = 1
    while len(out) < s:
        if f is None or f(GaussianRational(0, nu)) != GaussianRational(0):
            out.append((Fraction(0), Fraction(nu)))
        nu += 1
    return out


def search_no_real_block(
    f: Poly,
    nodes_complex: Sequence[tuple[Fraction, Fraction]],
    first: Sequence[Fraction] = (),
    budget: int = 64,
) -> ArrowBlock:
    """Try special nodes (``first``, then the default order) until ``h^2 >= 0``."""
    tried = []
    candidates = itertools.chain(first, itertools.islice(special_node_candidates(), budget))
    for lam in candidates:
        tried.append(lam)
        try:
            return build_block_no_real(f, nodes_complex, lam)
        except InterlacingError:
            continue
    # widen geometrically past the budget
    mag = Fraction(2) ** (budget // 4 + 1)
    for _ in range(256):
        for lam in (mag, -mag):
            try:
                return build_block_no_real(f, nodes_complex, lam)
            except InterlacingError:
                tried.append(lam)
        mag *= 2
    raise RepresentationError(f"no special node found among {len(tried)} candidates")


def represent_factor(f: Poly, real_budget: int | None = None) -> tuple[ArrowBlock, Fraction]:
    """One block for a monic squarefree factor; returns ``(block, c)`` with ``f = c * det``.

    ``real_budget`` is the number of real roots the block should account
    for; it defaults to the true count and may be lowered by an even amount,
    or made negative (the block is then built for ``-real_budget`` and negated).
    """
    intervals = isolate_real_roots(f)
    r = len(intervals)
    budget = r if real_budget is None else real_budget
    if abs(budget) > r or (r - budget) % 2:
        raise RepresentationError(f"real budget {budget} unreachable for {r} real roots")
    negate = budget < 0
    budget = abs(budget)
    d = len(f.coeffs) - 1
    s = (d - budget) // 2
    g, c = normalize_target(f, s)
    if budget >= 1:
        cpts = default_complex_nodes(s, g)
        lams = _feasible_nodes(g, intervals, budget, cpts)
        block = build_block_main(g, lams, cpts)
    else:
        first = []
        if intervals:
            # -lambda beyond the largest real root keeps h^2 >= 0
            last = intervals[-1]
            while last.width > 1:
                last = refine_interval(f, last)
            first += [-(last.lo + last.hi) / 2, -last.hi]
        block = search_no_real_block(g, default_complex_nodes(s - 1, g), first)
    if negate:
        block = block.negate()
        c = c * (-1) ** block.dimension
    return block, c


def _feasible_nodes(
    g: Poly, intervals: Sequence[RootInterval], budget: int, cpts, max_scan: int = 10_000
) -> list[Fraction]:
    """First gap subset (lexicographic) whose interpolated squares are all nonnegative."""
    gaps = select_interlacing_nodes(intervals)
    if budget - 1 == len(gaps):
        return gaps
    for n, subset in enumerate(itertools.combinations(range(len(gaps)), budget - 1)):
        if n >= max_scan:
            break
        lams = [gaps[i] for i in subset]
        if _squares_nonnegative(g, lams, cpts):
            return lams
    raise RepresentationError(f"no sign-feasible node subset among {min(n + 1, max_scan)} scanned")


def _squares_nonnegative(g: Poly, lams, cpts) -> bool:
    for i, lam in enumerate(lams):
        u_i = _prod((lam - other for k, other in enumerate(lams) if k != i), Fraction(1))
        v = _prod((complex_factor(lam, m, n) for m, n in cpts), Fraction(1))
        if -g(lam) / (v * u_i) < 0:
            return False
    return True


def real_root_budget(chain: Sequence[Poly], target_real: int) -> list[int]:
    """Split a target ``p_plus - p_minus`` across squarefree factors.

    Reductions are taken greedily from the first factors; each factor can
    move from ``r_k`` down to ``-r_k`` in steps of two.
    """
    counts = [count_real_roots(f) for f in chain]
    total = sum(counts)
    reduce_by = total - target_real
    if reduce_by < 0 or reduce_by % 2 or target_real < -total:
        raise RepresentationError(f"signature with real count {target_real} unreachable (r = {total})")
    out = []
    for r in counts:
        step = min(reduce_by, 2 * r)
        out.append(r - step)
        reduce_by -= step
    return out


def represent(p: Poly, allow_constant: bool = False, real_target: int | None = None) -> Representation:
    """Arrow-diagonal representation of ``p`` of maximal signature ``(r + s, s)``.

    ``real_target`` requests a smaller ``p_plus - p_minus`` instead.
    """
    if p.is_zero():
        raise RepresentationError("zero polynomial has no representation")
    if p.is_constant():
        if allow_constant:
            return Representation((), p.lc, (0, 0))
        raise RepresentationError("constant polynomial")
    chain = squarefree_chain(p)
    if real_target is None:
        budgets = [None] * len(chain)
    else:
        budgets = real_root_budget(chain, real_target)
    blocks = []
    scale = p.lc
    for f, budget in zip(chain, budgets):
        block, c = represent_factor(f, budget)
        blocks.append(block)
        scale *= c
    return Representation.from_blocks(blocks, scale)


def represent_reciprocal(p: Poly) -> Representation:
    """Representation of the reciprocal, i.e. ``p(x) = c * det(J - x A)``; needs ``p(0) != 0``."""
    return represent(reciprocal(p))
