"""Command-line entry point and JSON report format."""
from __future__ import annotations

import argparse
import json
import math
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import corpus
from .linalg import MatQ
from .parse import ParseError, parse_matrix, serialize_matrix
from .regsing import decide
from .system import INFINITY, MahlerSystem, PuiseuxMatrix, RatMatrix, SingularMatrixError

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_SINGULAR = 3


class InputError(ValueError):
    pass


@dataclass(frozen=True)
class InputDoc:
    p: int
    matrix_text: str
    order: int = 10
    d_override: Optional[int] = None
    scan_all_d: bool = False
    format: str = "text"
    example: Optional[str] = None

    def validate(self) -> None:
        if self.p < 2:
            raise InputError("p must be at least 2")
        if self.order < 0:
            raise InputError("order must be nonnegative")
        if self.d_override is not None:
            if self.d_override < 1 or math.gcd(self.d_override, self.p) != 1:
                raise InputError("d must be a positive integer coprime to p")
            if self.scan_all_d:
                raise InputError("--d and --scan-all-d are exclusive")
        if self.format not in ("text", "json"):
            raise InputError("format must be text or json")


@dataclass(frozen=True)
class Report:
    input: dict
    regular_singular: bool
    d: int
    nu: int
    mu: int
    dimX: int
    Lambda: Optional[MatQ]
    gauge: Optional[PuiseuxMatrix]
    residual_valuation: object  # int, INFINITY or None
    seconds: float


def run(doc: InputDoc) -> Report:
    doc.validate()
    try:
        rows = parse_matrix(doc.matrix_text)
    except ParseError as exc:
        raise InputError(str(exc)) from exc
    t0 = time.perf_counter()
    mahler = MahlerSystem(doc.p, RatMatrix(rows))
    v = decide(mahler, truncation_order=doc.order, scan_all_d=doc.scan_all_d, d=doc.d_override)
    seconds = time.perf_counter() - t0
    echoed = {
        "p": doc.p,
        "matrix": serialize_matrix(rows),
        "order": doc.order,
        "d": doc.d_override,
        "scan_all_d": doc.scan_all_d,
        "example": doc.example,
    }
    return Report(echoed, v.regular_singular, v.d, v.bounds.nu, v.bounds.mu, v.dimX,
                  v.Lambda, v.gauge, v.residual_valuation, seconds)


# --------------------------------------------------------------------------
# serialization

def _q(x: Fraction) -> str:
    return str(x)


def _mat(M: MatQ) -> list[list[str]]:
    return [[_q(x) for x in row] for row in M.data]


def report_to_dict(r: Report) -> dict:
    gauge = None
    if r.gauge is not None:
        gauge = {
            "d": r.gauge.d,
            "truncation_index": r.gauge.known_up_to,
            "coeffs": {str(n): _mat(c) for n, c in sorted(r.gauge.coeffs.items())},
        }
    res = r.residual_valuation
    return {
        "input": dict(r.input),
        "regular_singular": r.regular_singular,
        "d": r.d,
        "nu": r.nu,
        "mu": r.mu,
        "dimX": r.dimX,
        "Lambda": _mat(r.Lambda) if r.Lambda is not None else None,
        "gauge": gauge,
        "residual_valuation": "infinity" if res is INFINITY else res,
        "timing": {"seconds": r.seconds},
    }


def _unmat(rows) -> MatQ:
    return MatQ.from_rows([[Fraction(x) for x in row] for row in rows])


def report_from_dict(data: dict) -> Report:
    g = data["gauge"]
    gauge = None
    if g is not None:
        coeffs = {int(n): _unmat(c) for n, c in g["coeffs"].items()}
        size = next(iter(coeffs.values())).rows
        gauge = PuiseuxMatrix(g["d"], size, coeffs, g["truncation_index"])
    res = data["residual_valuation"]
    return Report(
        dict(data["input"]), data["regular_singular"], data["d"], data["nu"], data["mu"], data["dimX"],
        _unmat(data["Lambda"]) if data["Lambda"] is not None else None,
        gauge,
        INFINITY if res == "infinity" else res,
        data["timing"]["seconds"],
    )


def _exponent(n: int, d: int) -> str:
    e = Fraction(n, d)
    return str(e) if e.denominator == 1 else f"({e})"


def puiseux_entry_str(G: PuiseuxMatrix, i: int, j: int) -> str:
    terms = []
    for n in sorted(G.coeffs):
        c = G.coeffs[n][i, j]
        if not c:
            continue
        mono = "" if n == 0 else ("z" if n == G.d else f"z^{_exponent(n, G.d)}")
        a = abs(c)
        body = str(a) if not mono else (mono if a == 1 else f"{a}*{mono}")
        terms.append(("-" if c < 0 else "+", body))
    if not terms:
        return "0"
    out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


def report_to_text(r: Report) -> str:
    inp = r.input
    src = f"example {inp['example']}" if inp.get("example") else "input matrix"
    lines = [f"{src}, p = {inp['p']}"]
    lines.append(f"regular singular at 0: {'yes' if r.regular_singular else 'no'}")
    lines.append(f"ramification d = {r.d}: nu = {r.nu}, mu = {r.mu}, dim X = {r.dimX}")
    if r.Lambda is not None:
        lines.append("constant matrix Lambda:")
        lines += ["  [" + ", ".join(str(x) for x in row) + "]" for row in r.Lambda.data]
    if r.gauge is not None:
        G = r.gauge
        top = _exponent(G.known_up_to, G.d)
        lines.append(f"gauge transformation, terms up to z^{top}:")
        for i in range(G.size):
            for j in range(G.size):
                lines.append(f"  G[{i + 1},{j + 1}] = {puiseux_entry_str(G, i, j)}")
        res = r.residual_valuation
        if res is INFINITY:
            lines.append("A G - phi_p(G) Lambda vanishes on the whole computed window")
        else:
            lines.append(f"A G - phi_p(G) Lambda starts at z^{_exponent(res, G.d)}")
    lines.append(f"time: {r.seconds:.3f} s")
    return "\n".join(lines)


# --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="mahlersys",
        description="Decide whether a p-Mahler system phi_p(Y) = A Y is regular singular at 0.",
    )
    ap.add_argument("--p", type=int, help="Mahler base (required with --matrix)")
    src = ap.add_mutually_exclusive_group(required=True)
    src.add_argument("--matrix", metavar="FILE", help="file holding A, rows separated by ';' ('-' for stdin)")
    src.add_argument("--example", metavar="NAME", choices=sorted(corpus.REGISTRY),
                     help="built-in system: %(choices)s")
    ap.add_argument("--order", type=int, default=10, help="largest Puiseux exponent of the gauge (default 10)")
    ap.add_argument("--d", type=int, dest="d", help="use this ramification instead of computing one")
    ap.add_argument("--scan-all-d", action="store_true", help="try every admissible ramification")
    ap.add_argument("--format", choices=("text", "json"), default="text")
    return ap


def _doc_from_args(args) -> InputDoc:
    if args.example:
        named = corpus.by_name(args.example)
        if args.p is not None and args.p != named.sys.p:
            raise InputError(f"example {args.example} has p = {named.sys.p}")
        p, text = named.sys.p, serialize_matrix(named.sys.A.data)
    else:
        if args.p is None:
            raise InputError("--p is required with --matrix")
        p = args.p
        try:
            if args.matrix == "-":
                text = sys.stdin.read()
            else:
                with open(args.matrix, encoding="utf-8") as fh:
                    text = fh.read()
        except OSError as exc:
            raise InputError(f"cannot read {args.matrix}: {exc.strerror}") from exc
    return InputDoc(p, text, args.order, args.d, args.scan_all_d, args.format, args.example)


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        doc = _doc_from_args(args)
        report = run(doc)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except SingularMatrixError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SINGULAR
    if doc.format == "json":
        print(json.dumps(report_to_dict(report), indent=2))
    else:
        print(report_to_text(report))
    return EXIT_OK
