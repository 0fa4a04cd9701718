"""Exact arrow-matrix determinantal representations of univariate polynomials."""
from arrowrep.certify import certify_representation, expand_block
from arrowrep.parser import ParseError, parse_poly, serialize_poly
from arrowrep.poly import GaussianRational, Poly, gcd, squarefree_chain
from arrowrep.represent import ArrowBlock, ComplexNode, RealNode, Representation, represent
from arrowrep.sturm import count_real_roots, isolate_real_roots, sturm_sequence
from arrowrep.transform import shift, shift_chain

__all__ = [
    "ArrowBlock",
    "ComplexNode",
    "GaussianRational",
    "ParseError",
    "Poly",
    "RealNode",
    "Representation",
    "certify_representation",
    "count_real_roots",
    "expand_block",
    "gcd",
    "isolate_real_roots",
    "parse_poly",
    "represent",
    "serialize_poly",
    "shift",
    "shift_chain",
    "squarefree_chain",
    "sturm_sequence",
]

__version__ = "0.1.0"
