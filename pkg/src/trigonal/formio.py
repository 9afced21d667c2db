"""Text format for bi-forms and the JSON report schema.

Grammar (whitespace is insignificant)::

    expr    := ['+'|'-'] term (('+'|'-') term)*
    term    := [rational ['*']] varpow ('*' varpow)*  |  rational
    varpow  := ('x'|'y'|'X'|'Y') ['^' int]
    rational:= int ['/' positive-int]

Every term must have the same (x, y)-degree and the same (X, Y)-degree.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Optional

from .forms import BiForm
from .verifier import VerificationReport

SCHEMA_VERSION = 1

_TOKEN = re.compile(r"\s*(?:(\d+)|([xyXY])|(\S))")


class ParseError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


class _Lexer:
    def __init__(self, text: str):
        self.tokens: list[tuple[str, str, int]] = []
        for m in _TOKEN.finditer(text):
            if m.group(1) is not None:
                self.tokens.append(("int", m.group(1), m.start(1)))
            elif m.group(2) is not None:
                self.tokens.append(("var", m.group(2), m.start(2)))
            elif m.group(3) is not None:
                self.tokens.append(("op", m.group(3), m.start(3)))
        self.end = len(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else ("eof", "", self.end)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, kind: str, value: Optional[str] = None):
        tok = self.take()
        if tok[0] != kind or (value is not None and tok[1] != value):
            want = value or kind
            raise ParseError(f"expected {want!r}, found {tok[1] or 'end of input'!r}", tok[2])
        return tok


def _parse_term(lx: _Lexer):
    """Return ``(coeff, {var: exp}, start_pos)``."""
    start = lx.peek()[2]
    coeff = Fraction(1)
    exps = {"x": 0, "y": 0, "X": 0, "Y": 0}
    has_coeff = False
    if lx.peek()[0] == "int":
        num = int(lx.take()[1])
        den = 1
        if lx.peek()[:2] == ("op", "/"):
            lx.take()
            tok = lx.expect("int")
            den = int(tok[1])
            if den == 0:
                raise ParseError("zero denominator", tok[2])
        coeff = Fraction(num, den)
        has_coeff = True
        if lx.peek()[:2] == ("op", "*"):
            lx.take()
            if lx.peek()[0] != "var":
                tok = lx.peek()
                raise ParseError("expected a variable after '*'", tok[2])
    if lx.peek()[0] != "var":
        if has_coeff:
            return coeff, exps, start
        tok = lx.peek()
        raise ParseError(f"expected a term, found {tok[1] or 'end of input'!r}", tok[2])
    while True:
        var = lx.expect("var")[1]
        e = 1
        if lx.peek()[:2] == ("op", "^"):
            lx.take()
            e = int(lx.expect("int")[1])
        exps[var] += e
        if lx.peek()[:2] == ("op", "*"):
            lx.take()
            continue
        break
    return coeff, exps, start


def parse_biform(text: str, expected_bidegree: Optional[tuple[int, int]] = None) -> BiForm:
    """Parse text into a bi-form, combining like terms.

    A bare ``0`` (or other variable-free zero term) fits any bidegree, so
    ``parse_biform("0", (3, 5))`` gives the zero form of bidegree (3, 5).
    """
    lx = _Lexer(text)
    terms = []
    sign = 1
    if lx.peek()[:2] in (("op", "+"), ("op", "-")):
        sign = -1 if lx.take()[1] == "-" else 1
    while True:
        coeff, exps, pos = _parse_term(lx)
        terms.append((sign * coeff, exps, pos))
        tok = lx.peek()
        if tok[0] == "eof":
            break
        if tok[:2] in (("op", "+"), ("op", "-")):
            lx.take()
            sign = -1 if tok[1] == "-" else 1
            continue
        raise ParseError(f"unexpected {tok[1]!r}", tok[2])

    bideg = None
    for coeff, e, pos in terms:
        if coeff == 0 and not any(e.values()):
            continue
        d = (e["x"] + e["y"], e["X"] + e["Y"])
        if bideg is None:
            bideg = d
        elif d != bideg:
            raise ParseError(f"inhomogeneous input: term of bidegree {d} after {bideg}", pos)
    if bideg is None:
        bideg = expected_bidegree or (0, 0)
    if expected_bidegree is not None and tuple(expected_bidegree) != bideg:
        raise ValueError(f"bidegree {bideg} does not match expected {tuple(expected_bidegree)}")
    a, b = bideg
    return BiForm.from_terms(a, b, [
        (c, e["y"], e["Y"]) for c, e, _ in terms if c != 0 or any(e.values())
    ])


def _varpow(var: str, e: int) -> Optional[str]:
    if e == 0:
        return None
    return var if e == 1 else f"{var}^{e}"


def print_biform(P: BiForm) -> str:
    """Canonical text: row-major terms, ``1`` coefficients and ``^1`` omitted."""
    a, b = P.bidegree
    out = []
    for c, i, j in P.terms():
        vars_ = [v for v in (_varpow("x", a - i), _varpow("y", i),
                             _varpow("X", b - j), _varpow("Y", j)) if v]
        mag = abs(c)
        num = str(mag.numerator) if mag.denominator == 1 else f"{mag.numerator}/{mag.denominator}"
        if not vars_:
            body = num
        elif mag == 1:
            body = "*".join(vars_)
        else:
            body = num + "*" + "*".join(vars_)
        if not out:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out) if out else "0"


def fraction_str(q: Fraction) -> str:
    """Rationals in JSON are strings ``"p/q"``."""
    return f"{q.numerator}/{q.denominator}"


def report_to_dict(rep: VerificationReport, timing: bool = True) -> dict:
    s = rep.schedule
    d = {
        "schema": SCHEMA_VERSION,
        "b": rep.b,
        "family": s.family if s else "",
        "r": s.rs[0] if s else 0,
        "s": s.rs[1] if s else 0,
        "a2": s.src2[0] if s else 0,
        "b2": s.src2[1] if s else 0,
        "a3": s.target[0] if s else 0,
        "b3": s.target[1] if s else 0,
        "c": s.c if s else 0,
        "N": s.N if s else 0,
        "mode": rep.mode,
        "conditions": rep.conditions,
        "rank_iii": rep.cond_iii.achieved if rep.cond_iii else 0,
        "rank_iv": rep.cond_iv.achieved if rep.cond_iv else 0,
        "kernel_dim": rep.kernel_dim,
        "attempts": rep.attempts,
        "pass": rep.passed,
        "elapsed_ms": int(round(rep.elapsed * 1000)) if timing else 0,
    }
    if rep.error is not None:
        d["error"] = rep.error
    return d


def report_to_json(rep: VerificationReport, timing: bool = True) -> str:
    return json.dumps(report_to_dict(rep, timing), separators=(",", ":"))


REPORT_KEYS = ("schema", "b", "family", "r", "s", "a2", "b2", "a3", "b3", "c", "N", "mode",
               "conditions", "rank_iii", "rank_iv", "kernel_dim", "attempts", "pass", "elapsed_ms")


def validate_report_dict(d: dict) -> None:
    """Raise ValueError unless ``d`` has exactly the report field set and types."""
    keys = set(d) - {"error"}
    if keys != set(REPORT_KEYS):
        raise ValueError(f"report fields differ: {sorted(keys ^ set(REPORT_KEYS))}")
    for k in ("schema", "b", "r", "s", "a2", "b2", "a3", "b3", "c", "N",
              "rank_iii", "rank_iv", "kernel_dim", "attempts", "elapsed_ms"):
        if type(d[k]) is not int:
            raise ValueError(f"field {k!r} must be an int")
    if not isinstance(d["family"], str) or not isinstance(d["mode"], str):
        raise ValueError("family and mode must be strings")
    if type(d["pass"]) is not bool:
        raise ValueError("pass must be a bool")
    cond = d["conditions"]
    if set(cond) != {"i", "ii", "iii", "iv"} or any(type(v) is not bool for v in cond.values()):
        raise ValueError("conditions must map i..iv to bools")
