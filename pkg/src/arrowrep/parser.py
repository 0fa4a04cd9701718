"""Parse polynomial expressions in ``x`` and serialize them back canonically.

Grammar (whitespace is insignificant)::

    expr    := term (("+" | "-") term)*
    term    := unary (("*" | "/") unary)*
    unary   := ("+" | "-") unary | power
    power   := atom ("^" exponent)?
    exponent:= unary                 # must evaluate to a nonnegative integer constant
    atom    := NUMBER | "x" | "(" expr ")"
    NUMBER  := digits ("." digits)?

Division is only allowed by a nonzero constant, so ``1/2*x^2`` and
``(x + 1)/3`` are accepted while ``1/x`` is not.  Decimal literals are
converted exactly (``0.25`` is ``1/4``).
"""
from __future__ import annotations

from fractions import Fraction

from arrowrep.poly import Poly

#: Largest degree the parser will build; guards ``x^99999999`` style input.
MAX_DEGREE = 10_000
MAX_BITS = 1 << 20
MAX_NESTING = 100


class ParseError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at byte {offset}")
        self.message = message
        self.offset = offset


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.depth = 0
        # byte offsets of every character, for error reporting on non-ASCII input
        self._byte = [0]
        for ch in text:
            self._byte.append(self._byte[-1] + len(ch.encode("utf-8", "surrogatepass")))

    def error(self, message: str, pos: int | None = None) -> ParseError:
        pos = self.pos if pos is None else pos
        return ParseError(message, self._byte[pos])

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos] in " \t\r\n":
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def parse(self) -> Poly:
        result = self.expr()
        if self.peek():
            raise self.error(f"unexpected {self.text[self.pos]!r}")
        return result

    def expr(self) -> Poly:
        left = self.term()
        while self.peek() in ("+", "-"):
            op = self.text[self.pos]
            self.pos += 1
            right = self.term()
            left = left + right if op == "+" else left - right
        return left

    def term(self) -> Poly:
        left = self.unary()
        while self.peek() in ("*", "/"):
            op = self.text[self.pos]
            start = self.pos
            self.pos += 1
            right = self.unary()
            if op == "*":
                if _degree(left) + _degree(right) > MAX_DEGREE:
                    raise self.error("degree too large", start)
                left = left * right
            else:
                if not right.is_constant():
                    raise self.error("division by a non-constant", start)
                if right.is_zero():
                    raise self.error("division by zero", start)
                left = left.scale(1 / right.lc)
        return left

    def unary(self) -> Poly:
        self.depth += 1
        if self.depth > MAX_NESTING:
            raise self.error("expression nested too deeply")
        try:
            c = self.peek()
            if c in ("+", "-"):
                self.pos += 1
                operand = self.unary()
                return -operand if c == "-" else operand
            return self.power()
        finally:
            self.depth -= 1

    def power(self) -> Poly:
        base = self.atom()
        if self.peek() != "^":
            return base
        start = self.pos
        self.pos += 1
        self.skip_ws()
        exp_start = self.pos
        exponent = self.unary()
        if not exponent.is_constant():
            raise self.error("exponent must be a constant", exp_start)
        value = exponent.lc
        if value.denominator != 1:
            raise self.error("non-integer exponent", exp_start)
        if value < 0:
            raise self.error("negative exponent", exp_start)
        n = int(value)
        if n > MAX_DEGREE or _degree(base) * n > MAX_DEGREE:
            raise self.error("degree too large", start)
        if _bits(base) * n > MAX_BITS:
            raise self.error("coefficients too large", start)
        return base**n

    def atom(self) -> Poly:
        c = self.peek()
        if not c:
            raise self.error("unexpected end of input")
        if c == "(":
            self.pos += 1
            inner = self.expr()
            if self.peek() != ")":
                raise self.error("expected ')'")
            self.pos += 1
            return inner
        if c == "x":
            self.pos += 1
            return Poly.x()
        if c.isdigit() and c.isascii():
            return Poly.const(self.number())
        if c.isalpha():
            raise self.error(f"unknown variable {c!r}")
        raise self.error(f"unexpected {c!r}")

    def number(self) -> Fraction:
        start = self.pos
        text = self.text
        while self.pos < len(text) and text[self.pos].isascii() and text[self.pos].isdigit():
            self.pos += 1
        if self.pos < len(text) and text[self.pos] == ".":
            self.pos += 1
            frac_start = self.pos
            while self.pos < len(text) and text[self.pos].isascii() and text[self.pos].isdigit():
                self.pos += 1
            if self.pos == frac_start:
                raise self.error("digits expected after '.'")
        if self.pos - start > 4096:
            raise self.error("numeric literal too long", start)
        return Fraction(text[start : self.pos])


def _degree(p: Poly) -> int:
    return max(len(p.coeffs) - 1, 0)


def _bits(p: Poly) -> int:
    return max((max(c.numerator.bit_length(), c.denominator.bit_length()) for c in p.coeffs), default=0)


def parse_poly(src: str | bytes) -> Poly:
    """Parse an expression in ``x``; raises :class:`ParseError` on bad input.

    >>> parse_poly("(x-1)*(x^2+1)")
    Poly('x^3 - x^2 + x - 1')
    """
    if isinstance(src, (bytes, bytearray)):
        try:
            src = bytes(src).decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError("invalid UTF-8", exc.start) from None
    return _Parser(src).parse()


def _format_rational(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def serialize_poly(p: Poly) -> str:
    """Canonical descending-degree text, e.g. ``"1/2*x^2 - 3"``."""
    if p.is_zero():
        return "0"
    parts = []
    for k in range(len(p.coeffs) - 1, -1, -1):
        c = p.coeffs[k]
        if c == 0:
            continue
        mag = abs(c)
        mono = "" if k == 0 else "x" if k == 1 else f"x^{k}"
        if not mono:
            body = _format_rational(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{_format_rational(mag)}*{mono}"
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append((" - " if c < 0 else " + ") + body)
    return "".join(parts)
