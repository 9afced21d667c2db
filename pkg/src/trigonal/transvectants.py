"""Transvectants of binary forms and bi-transvectants of bi-forms.

The r-th transvectant of ``F`` in ``V_d`` and ``G`` in ``V_e`` is

    T(F, G) = (d-r)!/d! * (e-r)!/e!
              * sum_i (-1)^i C(r, i) d^r F / dX^(r-i) dY^i * d^r G / dX^i dY^(r-i)

with exactly this normalization; the witness coefficients in
:mod:`trigonal.witnesses` depend on it.  The (r, s) bi-transvectant applies
the r-th transvectant to the (x, y) factors and the s-th to the (X, Y)
factors and extends bilinearly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .exact_linalg import RatMatrix, binomial
from .forms import BiForm, BinaryForm, ZERO


def clebsch_gordan_dims(d: int, e: int) -> list[int]:
    """Degrees of the irreducible summands of ``V_d (x) V_e`` (needs ``e <= d``)."""
    if e > d:
        raise ValueError("clebsch_gordan_dims expects e <= d")
    degs = [d + e - 2 * r for r in range(e + 1)]
    assert sum(k + 1 for k in degs) == (d + 1) * (e + 1)
    return degs


def _prefactor(d: int, e: int, r: int) -> Fraction:
    return Fraction(factorial(d - r) * factorial(e - r), factorial(d) * factorial(e))


def transvect(F: BinaryForm, G: BinaryForm, r: int) -> BinaryForm:
    """r-th transvectant, evaluated term by term from the differential formula.

    The formula is applied as written for any pair of degrees; when
    ``deg G > deg F`` it coincides with ``(-1)^r transvect(G, F, r)``.
    """
    d, e = F.degree, G.degree
    if not 0 <= r <= min(d, e):
        raise ValueError(f"transvectant order {r} outside 0..{min(d, e)}")
    total = BinaryForm.zero(d + e - 2 * r)
    for i in range(r + 1):
        dF = F.partial("X", r - i).partial("Y", i)
        dG = G.partial("X", i).partial("Y", r - i)
        total = total + (dF * dG).scale((-1) ** i * binomial(r, i))
    return total.scale(_prefactor(d, e, r))


@lru_cache(maxsize=None)
def monomial_table(d: int, e: int, r: int) -> tuple[tuple[Fraction, ...], ...]:
    """``table[p][q]``: coefficient of ``T(X^(d-p) Y^p, X^(e-q) Y^q)``.

    Every term of the sum lands on the same monomial, index ``p + q - r`` of
    ``V_(d+e-2r)``, so a monomial pair transvects to one scaled monomial.
    """
    pref = _prefactor(d, e, r)
    table = []
    for p in range(d + 1):
        row = []
        for q in range(e + 1):
            s = 0
            for i in range(r + 1):
                term = (_ff(d - p, r - i) * _ff(p, i) * _ff(e - q, i) * _ff(q, r - i))
                if term:
                    s += (-1) ** i * binomial(r, i).numerator * term
            row.append(pref * s)
        table.append(tuple(row))
    return tuple(table)


def _ff(n: int, k: int) -> int:
    if k > n:
        return 0
    out = 1
    for t in range(n - k + 1, n + 1):
        out *= t
    return out


def apolar_monomial(d: int, i: int, e: int, j: int) -> tuple[Fraction, int]:
    """Closed form of ``T^(e)(X^i Y^(d-i), X^(e-j) Y^j)``.

    Returns ``(coeff, k)`` meaning ``coeff * X^k Y^(d-e-k)``; the exponent is
    meaningful only when the coefficient is nonzero.
    """
    if not (0 <= i <= d and 0 <= j <= e and e <= d):
        raise IndexError(f"apolar indices out of range: d={d} i={i} e={e} j={j}")
    if j <= i and e - j <= d - i:
        coeff = (-1) ** (e - j) / binomial(d, i) * binomial(d - e, i - j)
        return coeff, i - j
    return Fraction(0), 0


def pre_apolar_coefficient(d: int, i: int, e: int, j: int) -> Fraction:
    """Coefficient A of ``T^(e-1)(X^i Y^(d-i), X^(e-j) Y^j)``.

    The image is ``A * X^(i-j+1) Y^((d-e+2)-(i-j+1))``; A vanishes exactly
    when ``j(d+2) == (i+1)e``.
    """
    if not (0 <= i <= d and 1 <= e <= d and 0 <= j <= i + 1 and 0 <= e - j <= d - i + 1):
        raise IndexError(f"pre-apolar indices out of range: d={d} i={i} e={e} j={j}")
    return ((-1) ** (e - j) / binomial(d, i) * binomial(d - e + 2, i - j + 1)
            * Fraction(j * (d + 2) - (i + 1) * e, e * (d - e + 2)))


def lemma21_nondegenerate(d: int, i: int, e: int, j: int) -> bool:
    """Whether ``T^(e-1)`` pairs ``X^i Y^(d-i)`` and ``X^(e-j) Y^j`` nontrivially."""
    return j * (d + 2) != (i + 1) * e


# -- bi-transvectants ------------------------------------------------------------


@dataclass(frozen=True)
class TransvectantSpec:
    r: int
    s: int
    src1: tuple[int, int]
    src2: tuple[int, int]

    def __post_init__(self):
        (a, b), (a2, b2) = self.src1, self.src2
        if min(a, b, a2, b2) < 0:
            raise ValueError("bidegrees must be nonnegative")
        if not (0 <= self.r <= min(a, a2) and 0 <= self.s <= min(b, b2)):
            raise ValueError(f"(r, s) = ({self.r}, {self.s}) invalid for {self.src1} x {self.src2}")

    @property
    def target(self) -> tuple[int, int]:
        (a, b), (a2, b2) = self.src1, self.src2
        return (a + a2 - 2 * self.r, b + b2 - 2 * self.s)


def _check(P: BiForm, Q: BiForm, spec: TransvectantSpec):
    if P.bidegree != spec.src1 or Q.bidegree != spec.src2:
        raise ValueError(f"bidegrees {P.bidegree}, {Q.bidegree} do not match spec {spec.src1}, {spec.src2}")


def _table_x(spec: TransvectantSpec):
    return monomial_table(spec.src1[0], spec.src2[0], spec.r)


def _table_y(spec: TransvectantSpec):
    return monomial_table(spec.src1[1], spec.src2[1], spec.s)


def bi_transvect(P: BiForm, Q: BiForm, spec: TransvectantSpec) -> BiForm:
    """``T^(r,s)(P, Q)``, bilinear extension of ``T^(r)(F,F') * T^(s)(G,G')``."""
    _check(P, Q, spec)
    r, s = spec.r, spec.s
    ta, tb = _table_x(spec), _table_y(spec)
    a3, b3 = spec.target
    grid = [[ZERO] * (b3 + 1) for _ in range(a3 + 1)]
    qterms = list(Q.terms())
    for c1, i1, j1 in P.terms():
        rx, ry = ta[i1], tb[j1]
        for c2, i2, j2 in qterms:
            k = rx[i2] * ry[j2]
            if k:
                grid[i1 + i2 - r][j1 + j2 - s] += c1 * c2 * k
    return BiForm(a3, b3, tuple(map(tuple, grid)))


def matrix_of_right_slot(v: BiForm, spec: TransvectantSpec) -> RatMatrix:
    """Matrix of ``w -> T(v, w)`` in the row-major monomial bases."""
    if v.bidegree != spec.src1:
        raise ValueError(f"v has bidegree {v.bidegree}, spec expects {spec.src1}")
    a2, b2 = spec.src2
    a3, b3 = spec.target
    r, s = spec.r, spec.s
    ta, tb = _table_x(spec), _table_y(spec)
    rows = [[ZERO] * ((a2 + 1) * (b2 + 1)) for _ in range((a3 + 1) * (b3 + 1))]
    for c, i, j in v.terms():
        for k in range(a2 + 1):
            kx = ta[i][k]
            if not kx:
                continue
            for l in range(b2 + 1):
                ky = tb[j][l]
                if ky:
                    rows[(i + k - r) * (b3 + 1) + (j + l - s)][k * (b2 + 1) + l] += c * kx * ky
    return RatMatrix(len(rows), (a2 + 1) * (b2 + 1), tuple(map(tuple, rows)))


def matrix_of_left_slot(w: BiForm, spec: TransvectantSpec) -> RatMatrix:
    """Matrix of ``v -> T(v, w)`` in the row-major monomial bases."""
    if w.bidegree != spec.src2:
        raise ValueError(f"w has bidegree {w.bidegree}, spec expects {spec.src2}")
    a, b = spec.src1
    a3, b3 = spec.target
    r, s = spec.r, spec.s
    ta, tb = _table_x(spec), _table_y(spec)
    rows = [[ZERO] * ((a + 1) * (b + 1)) for _ in range((a3 + 1) * (b3 + 1))]
    for c, k, l in w.terms():
        for i in range(a + 1):
            kx = ta[i][k]
            if not kx:
                continue
            for j in range(b + 1):
                ky = tb[j][l]
                if ky:
                    rows[(i + k - r) * (b3 + 1) + (j + l - s)][i * (b + 1) + j] += c * kx * ky
    return RatMatrix(len(rows), (a + 1) * (b + 1), tuple(map(tuple, rows)))


def matrix_of_left_slot_stacked(ws: list[BiForm], spec: TransvectantSpec) -> RatMatrix:
    """Vertical stack of the matrices of ``v -> T(v, w_i)``."""
    if not ws:
        raise ValueError("need at least one w")
    return RatMatrix.vstack([matrix_of_left_slot(w, spec) for w in ws])
