from __future__ import annotations

import random
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from arrowrep.parser import MAX_DEGREE, ParseError, parse_poly, serialize_poly
from arrowrep.poly import Poly


@pytest.mark.parametrize(
    "text, coeffs",
    [
        ("x^3 - x", [0, -1, 0, 1]),
        ("(x-1)*(x^2+1)", [-1, 1, -1, 1]),
        ("1/2*x^2 - 3", [-3, 0, F(1, 2)]),
        ("(x + 1)/3", [F(1, 3), F(1, 3)]),
        ("-x^2", [0, 0, -1]),
        ("--x", [0, 1]),
        ("2^3", [8]),
        ("x^(1+1)", [0, 0, 1]),
        ("0.25*x", [0, F(1, 4)]),
        ("  x \t*\n x ", [0, 0, 1]),
        ("x^0", [1]),
        ("0", []),
        ("3*(x-1)^2", [3, -6, 3]),
    ],
)
def test_parse(text, coeffs):
    assert parse_poly(text) == Poly(coeffs)


@pytest.mark.parametrize(
    "text, offset",
    [
        ("", 0),
        ("x^^2", 2),
        ("1/x", 1),
        ("1/0", 1),
        ("y", 0),
        ("(x+1", 4),
        ("x^-1", 2),
        ("x^(1/2)", 2),
        ("x^x", 2),
        ("x 1", 2),
        ("1.", 2),
        ("x^100000", 1),
        ("é", 0),
        ("xé", 1),
        ("x+é", 2),
    ],
)
def test_errors_carry_byte_offset(text, offset):
    with pytest.raises(ParseError) as info:
        parse_poly(text)
    assert info.value.offset == offset


def test_bytes_input():
    assert parse_poly(b"x+1") == Poly([1, 1])
    with pytest.raises(ParseError):
        parse_poly(b"\xff")


def test_nesting_guard():
    with pytest.raises(ParseError):
        parse_poly("(" * 5000 + "x" + ")" * 5000)
    with pytest.raises(ParseError):
        parse_poly("-" * 5000 + "x")


def test_degree_guard_on_products():
    with pytest.raises(ParseError):
        parse_poly("*".join([f"x^{MAX_DEGREE // 2}"] * 3))


@pytest.mark.parametrize(
    "p, text",
    [
        (Poly([0, -1, 0, 1]), "x^3 - x"),
        (Poly([-3, 0, F(1, 2)]), "1/2*x^2 - 3"),
        (Poly(), "0"),
        (Poly([F(-2, 3)]), "-2/3"),
        (Poly([1, -1]), "-x + 1"),
    ],
)
def test_serialize(p, text):
    assert serialize_poly(p) == text


@given(st.lists(st.fractions(max_denominator=50).filter(lambda q: abs(q) < 10**9), max_size=12))
def test_round_trip(coeffs):
    p = Poly(coeffs)
    assert parse_poly(serialize_poly(p)) == p


@given(st.binary(max_size=40))
def test_fuzz_bytes_never_crash(data):
    try:
        parse_poly(data)
    except ParseError:
        pass


def test_fuzz_grammar_alphabet():
    rng = random.Random(7)
    alphabet = "x0123456789+-*/^(). "
    for _ in range(3000):
        s = "".join(rng.choice(alphabet) for _ in range(rng.randint(0, 25)))
        try:
            parse_poly(s)
        except ParseError:
            pass
