"""JSON interchange format for representations (``format_version`` 1).

Rationals are written as reduced ``"num/den"`` strings so that nothing is
lost to binary floating point.  A block that has been globally negated
carries ``"negated": true``; the key is omitted otherwise.
"""
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from arrowrep.parser import ParseError, parse_poly, serialize_poly
from arrowrep.poly import Poly
from arrowrep.represent import (
    MAIN,
    NO_REAL,
    ArrowBlock,
    ComplexNode,
    RealNode,
    Representation,
    RepresentationError,
)

FORMAT_VERSION = 1


class DocumentError(ValueError):
    """Malformed or unreadable representation document."""


def frac_to_str(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def str_to_frac(s: Any, what: str = "value") -> Fraction:
    if not isinstance(s, str):
        raise DocumentError(f"{what}: expected a 'num/den' string, got {type(s).__name__}")
    try:
        num, den = s.split("/")
        q = Fraction(int(num), int(den))
    except (ValueError, ZeroDivisionError):
        raise DocumentError(f"{what}: bad rational {s!r}") from None
    return q


def _real_node(n: RealNode) -> dict:
    return {"lambda": frac_to_str(n.lam), "h_sq": frac_to_str(n.h_sq)}


def _block_to_json(b: ArrowBlock) -> dict:
    out: dict[str, Any] = {
        "branch": b.branch,
        "real_nodes": [_real_node(n) for n in b.real_nodes],
        "complex_nodes": [
            {
                "mu": frac_to_str(c.mu),
                "nu": frac_to_str(c.nu),
                "sq_re": frac_to_str(c.sq_re),
                "sq_im": frac_to_str(c.sq_im),
            }
            for c in b.complex_nodes
        ],
        "e": frac_to_str(b.tail_e),
    }
    if b.special is not None:
        out["special"] = _real_node(b.special)
    if b.negated:
        out["negated"] = True
    return out


def to_document(p: Poly, rep: Representation) -> dict:
    return {
        "polynomial": serialize_poly(p),
        "scale": frac_to_str(rep.scale),
        "signature": list(rep.signature),
        "blocks": [_block_to_json(b) for b in rep.blocks],
        "format_version": FORMAT_VERSION,
    }


def _field(obj: dict, key: str, where: str):
    if not isinstance(obj, dict):
        raise DocumentError(f"{where}: expected an object")
    if key not in obj:
        raise DocumentError(f"{where}: missing {key!r}")
    return obj[key]


def _parse_real(obj, where: str) -> RealNode:
    return RealNode(
        str_to_frac(_field(obj, "lambda", where), f"{where}.lambda"),
        str_to_frac(_field(obj, "h_sq", where), f"{where}.h_sq"),
    )


def _parse_block(obj, where: str) -> ArrowBlock:
    branch = _field(obj, "branch", where)
    if branch not in (MAIN, NO_REAL):
        raise DocumentError(f"{where}: unknown branch {branch!r}")
    reals = _field(obj, "real_nodes", where)
    cplx = _field(obj, "complex_nodes", where)
    if not isinstance(reals, list) or not isinstance(cplx, list):
        raise DocumentError(f"{where}: node lists must be arrays")
    real_nodes = [_parse_real(n, f"{where}.real_nodes[{i}]") for i, n in enumerate(reals)]
    complex_nodes = []
    for i, c in enumerate(cplx):
        w = f"{where}.complex_nodes[{i}]"
        complex_nodes.append(
            ComplexNode(*(str_to_frac(_field(c, k, w), f"{w}.{k}") for k in ("mu", "nu", "sq_re", "sq_im")))
        )
    special = obj.get("special")
    special_node = None if special is None else _parse_real(special, f"{where}.special")
    negated = obj.get("negated", False)
    if not isinstance(negated, bool):
        raise DocumentError(f"{where}.negated must be a boolean")
    return ArrowBlock(
        branch,
        tuple(complex_nodes),
        tuple(real_nodes),
        str_to_frac(_field(obj, "e", where), f"{where}.e"),
        special=special_node,
        negated=negated,
    )


def from_document(doc: Any) -> tuple[Poly, Representation]:
    """Inverse of :func:`to_document`; raises :class:`DocumentError` on any defect."""
    if not isinstance(doc, dict):
        raise DocumentError("document must be a JSON object")
    version = _field(doc, "format_version", "document")
    if version != FORMAT_VERSION:
        raise DocumentError(f"unsupported format_version {version!r}")
    try:
        p = parse_poly(_field(doc, "polynomial", "document"))
    except (ParseError, TypeError) as exc:
        raise DocumentError(f"polynomial: {exc}") from None
    sig = _field(doc, "signature", "document")
    if not (isinstance(sig, list) and len(sig) == 2 and all(type(v) is int for v in sig)):
        raise DocumentError("signature must be [p_plus, p_minus]")
    blocks_json = _field(doc, "blocks", "document")
    if not isinstance(blocks_json, list):
        raise DocumentError("blocks must be an array")
    try:
        blocks = [_parse_block(b, f"blocks[{i}]") for i, b in enumerate(blocks_json)]
        rep = Representation(tuple(blocks), str_to_frac(_field(doc, "scale", "document"), "scale"), tuple(sig))
    except RepresentationError as exc:
        raise DocumentError(str(exc)) from None
    return p, rep


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2)


def read_document(path: str | Path) -> tuple[Poly, Representation]:
    try:
        text = Path(path).read_text(encoding="utf-8")
        doc = json.loads(text)
    except (OSError, UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise DocumentError(f"cannot read {path}: {exc}") from None
    return from_document(doc)
