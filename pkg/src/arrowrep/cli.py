"""Command-line front end.

Exit codes: 0 success, 1 parse or I/O error, 2 certification failure,
3 precondition violation.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import random
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence

import mpmath

from arrowrep import document
from arrowrep.certify import certify_representation
from arrowrep.document import DocumentError, frac_to_str
from arrowrep.parser import ParseError, parse_poly
from arrowrep.poly import squarefree_chain
from arrowrep.realize import realize_numeric, residual_check
from arrowrep.represent import RepresentationError, represent
from arrowrep.sturm import count_real_roots, isolate_real_roots
from arrowrep.transform import ShiftPreconditionError, shift, shift_chain_reports

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_CERTIFY = 2
EXIT_PRECONDITION = 3

log = logging.getLogger("arrowrep")


class CliError(Exception):
    def __init__(self, code: int, message: str, payload: dict | None = None):
        super().__init__(message)
        self.code = code
        self.payload = payload


def _emit(obj, out) -> None:
    out.write(json.dumps(obj, indent=2) + "\n")


def _poly_arg(text: str):
    try:
        return parse_poly(text)
    except ParseError as exc:
        raise CliError(EXIT_INPUT, f"parse error: {exc}") from None


def _load(path: str):
    try:
        return document.read_document(path)
    except DocumentError as exc:
        raise CliError(EXIT_INPUT, str(exc)) from None


def _require_certified(p, rep) -> None:
    result = certify_representation(p, rep)
    if not result:
        raise CliError(EXIT_CERTIFY, "representation does not certify", result.to_json())


def sample_points(seed: int, n: int = 8) -> list[Fraction]:
    rng = random.Random(seed)
    return [Fraction(rng.randint(-40, 40), rng.randint(1, 8)) for _ in range(n)]


# -- subcommands ----------------------------------------------------------------


def cmd_roots(args, out) -> int:
    p = _poly_arg(args.poly)
    if p.is_constant():
        raise CliError(EXIT_PRECONDITION, "constant polynomial has no roots to isolate")
    chain = squarefree_chain(p)
    intervals = []
    for iv in isolate_real_roots(chain[0]):
        mult = sum(1 for f in chain if not f.is_constant() and count_real_roots(f, (iv.lo, iv.hi)))
        intervals.append({"lo": frac_to_str(iv.lo), "hi": frac_to_str(iv.hi), "multiplicity": mult})
    _emit(
        {
            "count_with_multiplicity": sum(iv["multiplicity"] for iv in intervals),
            "distinct_count": len(intervals),
            "intervals": intervals,
        },
        out,
    )
    return EXIT_OK


def cmd_represent(args, out) -> int:
    p = _poly_arg(args.poly)
    if p.is_zero():
        raise CliError(EXIT_PRECONDITION, "zero polynomial has no representation")
    try:
        rep = represent(p, allow_constant=True)
    except RepresentationError as exc:
        raise CliError(EXIT_PRECONDITION, str(exc)) from None
    _require_certified(p, rep)
    doc = document.to_document(p, rep)
    if args.out:
        try:
            Path(args.out).write_text(document.dumps(doc) + "\n", encoding="utf-8")
        except OSError as exc:
            raise CliError(EXIT_INPUT, f"cannot write {args.out}: {exc}") from None
        log.info("wrote %s", args.out)
    else:
        _emit(doc, out)
    return EXIT_OK


def cmd_certify(args, out) -> int:
    p, rep = _load(args.rep)
    if args.poly is not None:
        p = _poly_arg(args.poly)
    result = certify_representation(p, rep)
    if not result:
        raise CliError(EXIT_CERTIFY, "representation does not certify", result.to_json())
    _emit({"ok": True, "signature": list(rep.signature)}, out)
    return EXIT_OK


def cmd_shift(args, out) -> int:
    p, rep = _load(args.rep)
    _require_certified(p, rep)
    steps = []
    try:
        if args.chain:
            # the chain always restarts from the maximal signature of p
            for nxt, report in shift_chain_reports(p)[1:]:
                steps.append((nxt, report))
        else:
            cur = rep
            for _ in range(args.steps):
                cur, report = shift(cur, p)
                steps.append((cur, report))
    except (ShiftPreconditionError, RepresentationError) as exc:
        raise CliError(EXIT_PRECONDITION, str(exc)) from None
    _emit([{"report": r.to_json(), "document": document.to_document(p, s)} for s, r in steps], out)
    return EXIT_OK


def cmd_realize(args, out) -> int:
    p, rep = _load(args.rep)
    _require_certified(p, rep)
    if args.precision < 8:
        raise CliError(EXIT_PRECONDITION, "precision must be at least 8 bits")
    real = realize_numeric(rep, args.precision)
    points = sample_points(args.seed)
    residual = residual_check(real, p, points, rep.scale) if real.dimension else Fraction(0)
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["i", "j", "value"])
        for i, row in enumerate(real.a_entries):
            for j, v in enumerate(row):
                writer.writerow([i, j, _num(v, real.precision_bits)])
        out.write(buf.getvalue())
        log.info("max relative residual %.3e", float(residual))
    else:
        _emit(
            {
                "dimension": real.dimension,
                "precision_bits": real.precision_bits,
                "j_diag": list(real.j_diag),
                "a": [[_num(v, real.precision_bits) for v in row] for row in real.a_entries],
                "residual": {
                    "max_relative": f"{float(residual):.6e}",
                    "sample_points": [frac_to_str(x) for x in points],
                },
            },
            out,
        )
    return EXIT_OK


def _num(v, prec: int) -> str:
    """Decimal string with enough digits to round-trip ``prec`` bits."""
    digits = int(prec * 0.30103) + 2
    return mpmath.nstr(v, digits, strip_zeros=False) if v else "0"


def cmd_selftest(args, out) -> int:
    checks = {
        "x^3 - x": (3, 0),
        "x^2 + 1": (1, 1),
        "(x^2 - 2)*(x^2 + 1)": (3, 1),
    }
    failures = []
    for text, sig in checks.items():
        p = parse_poly(text)
        rep = represent(p)
        if rep.signature != sig or not certify_representation(p, rep):
            failures.append(text)
    _emit({"ok": not failures, "failures": failures}, out)
    return EXIT_OK if not failures else EXIT_CERTIFY


# -- entry point -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="arrowrep", description="Exact arrow-matrix determinantal representations.")
    ap.add_argument("--seed", type=int, default=0, help="seed for sample points and property runs")
    ap.add_argument("--quiet", action="store_true", help="suppress informational messages on stderr")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("roots", help="count and isolate real roots")
    sp.add_argument("poly")
    sp.set_defaults(func=cmd_roots)

    sp = sub.add_parser("represent", help="build a certified representation")
    sp.add_argument("poly")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_represent)

    sp = sub.add_parser("certify", help="check a representation document exactly")
    sp.add_argument("--rep", required=True)
    sp.add_argument("--poly")
    sp.set_defaults(func=cmd_certify)

    sp = sub.add_parser("shift", help="lower the signature")
    sp.add_argument("--rep", required=True)
    group = sp.add_mutually_exclusive_group()
    group.add_argument("--steps", type=int, default=1)
    group.add_argument("--chain", action="store_true")
    sp.set_defaults(func=cmd_shift)

    sp = sub.add_parser("realize", help="numeric symmetric matrices and residuals")
    sp.add_argument("--rep", required=True)
    sp.add_argument("--precision", type=int, default=64)
    sp.add_argument("--format", choices=("json", "csv"), default="json")
    sp.set_defaults(func=cmd_realize)

    sp = sub.add_parser("selftest", help="reproduce the worked examples")
    sp.set_defaults(func=cmd_selftest)
    return ap


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    handler = logging.StreamHandler(err)
    handler.setFormatter(logging.Formatter("%(levelname)s: %(message)s"))
    log.addHandler(handler)
    log.setLevel(logging.WARNING if args.quiet else logging.INFO)
    try:
        return args.func(args, out)
    except CliError as exc:
        if exc.payload is not None:
            _emit(exc.payload, out)
        if not args.quiet or exc.code != EXIT_CERTIFY:
            err.write(f"error: {exc}\n")
        return exc.code
    finally:
        log.removeHandler(handler)


def main() -> None:
    sys.exit(run())
