"""Explicit witness vectors ``v`` in ``V_(3,b)`` and ``w_1..w_c`` in ``V_(a',b')``.

Each family is written symbolically in n (and m = n/2 for the second
``b = 3 mod 5`` variant).  Terms are given as ``(coeff, xexp, Xexp, Yexp)``
with the y-exponent implied by the x-degree, so ``(k, 2, p, q)`` reads
``k * x^2 y^(a-2) X^p Y^q``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as Q
from typing import Optional

from .exact_linalg import binomial as C
from .forms import BiForm, monomial
from .schedule import Schedule, schedule_for
from .transvectants import bi_transvect

MUTATIONS = ("zero_w", "duplicate_w", "perturb_v")


@dataclass(frozen=True)
class WitnessSet:
    b: int
    v: BiForm
    ws: tuple[BiForm, ...]
    family: str
    variant: Optional[str] = None  # "n!=4" / "n==4" (mod 5) for B5n3
    mutation: Optional[str] = None


def _form(a: int, b: int, terms) -> BiForm:
    """Bi-form of bidegree (a, b) from ``(coeff, xexp, Xexp, Yexp)`` terms."""
    out = []
    for coeff, xe, Xe, Ye in terms:
        if Xe + Ye != b or not 0 <= xe <= a:
            raise ValueError(f"term x^{xe} X^{Xe} Y^{Ye} is not of bidegree ({a},{b})")
        out.append((coeff, a - xe, Ye))
    return BiForm.from_terms(a, b, out)


def _b0(n):
    b = 5 * n
    v = _form(3, b, [
        (C(b, n), 3, n, 4 * n),
        (3 * C(b, 2 * n), 2, 2 * n, 3 * n),
        (3 * C(b, 2 * n), 1, 3 * n, 2 * n),
        (C(b, n), 0, 4 * n, n),
    ])
    ws = [
        _form(3, n, [(1, 3, 0, n), (-1, 2, n, 0)]),
        _form(3, n, [(1, 2, 0, n), (-1, 1, n, 0)]),
        _form(3, n, [(1, 1, 0, n), (-1, 0, n, 0)]),
    ]
    return v, ws


def _b1(n):
    b = 5 * n + 1
    k = 3 * n + 1
    v = _form(3, b, [
        (C(b, 2 * n), 3, 3 * n + 1, 2 * n),
        (3 * C(b, n), 2, 4 * n + 1, n),
        (3 * C(b, 2 * n), 1, 2 * n, 3 * n + 1),
        (C(b, n), 0, n, 4 * n + 1),
    ])
    w = _form(1, k, [
        (1, 1, k, 0), (-1, 1, 0, k),
        (-1, 0, n, 2 * n + 1), (1, 0, 2 * n + 1, n),
    ])
    return v, [w]


def _b2(n):
    b = 5 * n + 2
    v = _form(3, b, [
        (1, 3, n, 4 * n + 2),
        (1, 2, 2 * n + 1, 3 * n + 1),
        (1, 1, 3 * n + 1, 2 * n + 1),
        (1, 0, 4 * n + 2, n),
    ])
    w = _form(3, n, [(1, 2, 0, n), (-1, 1, n, 0)])
    return v, [w]


def _b3_ws(n):
    k = n + 1
    return [
        _form(3, k, [(1, 0, k, 0), (1, 1, 0, k)]),
        _form(3, k, [(1, 1, k, 0), (1, 2, 0, k)]),
        _form(3, k, [(1, 2, k, 0), (1, 3, 0, k)]),
    ]


def _b3_generic(n):
    b = 5 * n + 3
    v = _form(3, b, [
        (C(b, n), 3, n, 4 * n + 3),
        (C(b, 2 * n + 1), 2, 2 * n + 1, 3 * n + 2),
        (C(b, 2 * n + 1), 1, 3 * n + 2, 2 * n + 1),
        (C(b, n), 0, 4 * n + 3, n),
    ])
    return v, _b3_ws(n)


def _b3_special(n):
    """The variant for n = 4 mod 5, written in m = n/2."""
    m = n // 2
    b = 5 * n + 3
    v = _form(3, b, [
        (Q(7 * m + 3, m + 1) * Q(5 * m + 2, 3 * m + 2) * C(b, m), 3, m, 9 * m + 3),
        (1, 3, 9 * m + 5, m - 2),
        (3 * Q(5 * m + 2, 3 * m + 2) * C(b, 3 * m + 1), 2, 3 * m + 1, 7 * m + 2),
        (3 * C(b, 5 * m + 2), 1, 5 * m + 2, 5 * m + 1),
        (Q(5 * m + 3, 3 * m + 1) * C(b, 7 * m + 3), 0, 7 * m + 3, 3 * m),
    ])
    return v, _b3_ws(n)


def _b4(n):
    b = 5 * n + 4
    k = 3 * n + 4
    v = _form(3, b, [
        (Q(3 * n + 4, n + 2) * Q(3 * n + 4, n + 1) * C(b, 2 * n + 1), 3, 3 * n + 3, 2 * n + 1),
        (3 * Q(3 * n + 4, n + 1) * C(b, n), 2, 4 * n + 4, n),
        (-3 * C(b, 2 * n + 1), 1, 2 * n + 1, 3 * n + 3),
        (-Q(n + 2, 3 * n + 4) * C(b, n), 0, n, 4 * n + 4),
    ])
    w = _form(1, k, [
        (1, 1, k, 0), (1, 1, 0, k),
        (1, 0, 2 * n + 3, n + 1), (1, 0, n + 1, 2 * n + 3),
    ])
    return v, [w]


def _b7():
    v = _form(3, 7, [
        (C(7, 3), 3, 3, 4),
        (-9, 2, 0, 7),
        (C(7, 1), 1, 6, 1),
        (C(7, 3), 0, 4, 3),
    ])
    w = _form(3, 3, [(1, 3, 0, 3), (1, 1, 3, 0), (1, 0, 1, 2), (1, 0, 0, 3)])
    return v, [w]


def witnesses_for(b: int) -> WitnessSet:
    sched = schedule_for(b)
    n, fam = sched.n, sched.family
    variant = None
    if fam == "B7":
        v, ws = _b7()
    elif fam == "B5n":
        v, ws = _b0(n)
    elif fam == "B5n1":
        v, ws = _b1(n)
    elif fam == "B5n2":
        v, ws = _b2(n)
    elif fam == "B5n3":
        if n % 5 == 4:
            variant = "n==4"
            v, ws = _b3_special(n)
        else:
            variant = "n!=4"
            v, ws = _b3_generic(n)
    else:
        v, ws = _b4(n)
    ws = tuple(ws)
    _check_shape(sched, v, ws)
    return WitnessSet(b, v, ws, fam, variant)


def witnesses_b3_variant(n: int, variant: str) -> WitnessSet:
    """Either ``b = 5n + 3`` construction for any even n, regardless of n mod 5."""
    if n % 2 or n < 2:
        raise ValueError("n must be even and positive")
    if variant == "n==4" and n < 4:
        raise ValueError("the n = 4 mod 5 construction needs n >= 4 (it uses Y^(m-2))")
    build = {"n!=4": _b3_generic, "n==4": _b3_special}[variant]
    v, ws = build(n)
    return WitnessSet(5 * n + 3, v, tuple(ws), "B5n3", variant)


def _check_shape(sched: Schedule, v: BiForm, ws) -> None:
    if v.bidegree != (3, sched.b) or v.is_zero():
        raise AssertionError(f"bad v for b={sched.b}")
    if len(ws) != sched.c or any(w.bidegree != sched.src2 or w.is_zero() for w in ws):
        raise AssertionError(f"bad w list for b={sched.b}")


def _breaking_monomial(ws: WitnessSet) -> BiForm:
    """First monomial m (row-major) with ``T(m, w_1) != 0``."""
    spec = schedule_for(ws.b).spec
    a, b = ws.v.bidegree
    for i in range(a + 1):
        for j in range(b + 1):
            m = monomial(a, b, i, j)
            if not bi_transvect(m, ws.ws[0], spec).is_zero():
                return m
    raise AssertionError("T(., w_1) vanishes identically")


def tamper(ws: WitnessSet, mutation: str) -> WitnessSet:
    """Deliberately broken copy of a witness set, for exercising failure paths.

    ``zero_w`` replaces w_1 by 0, ``duplicate_w`` makes w_2 a copy of w_1
    (appending the copy when c = 1), ``perturb_v`` adds to v the first basis
    monomial m with ``T(m, w_1) != 0``.
    """
    if mutation == "zero_w":
        new = (ws.ws[0].scale(0),) + ws.ws[1:]
        return WitnessSet(ws.b, ws.v, new, ws.family, ws.variant, mutation)
    if mutation == "duplicate_w":
        new = (ws.ws[0], ws.ws[0]) + ws.ws[2:]
        return WitnessSet(ws.b, ws.v, new, ws.family, ws.variant, mutation)
    if mutation == "perturb_v":
        return WitnessSet(ws.b, ws.v + _breaking_monomial(ws), ws.ws, ws.family, ws.variant, mutation)
    raise ValueError(f"unknown mutation {mutation!r}; expected one of {MUTATIONS}")
