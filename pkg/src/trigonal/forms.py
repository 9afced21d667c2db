"""Binary forms, bi-forms on P^1 x P^1, and the SL2 x SL2 action.

Index conventions (fixed for the whole package):

* ``BinaryForm.coeffs[i]`` is the coefficient of ``X^(d-i) Y^i``.
* ``BiForm.coeffs[i][j]`` is the coefficient of ``x^(a-i) y^i X^(b-j) Y^j``.

So index 0 is always the pure power of the *first* variable.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

ZERO = Fraction(0)
ONE = Fraction(1)

Mat2 = tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]


def _falling(n: int, k: int) -> int:
    """n (n-1) ... (n-k+1); zero when k > n."""
    if k > n:
        return 0
    out = 1
    for t in range(n - k + 1, n + 1):
        out *= t
    return out


def _poly_mul(p: Sequence[Fraction], q: Sequence[Fraction]) -> list[Fraction]:
    out = [ZERO] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                if b:
                    out[i + j] += a * b
    return out


# -- binary forms ------------------------------------------------------------


@dataclass(frozen=True)
class BinaryForm:
    degree: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if self.degree < 0:
            raise ValueError("degree must be nonnegative")
        if len(self.coeffs) != self.degree + 1:
            raise ValueError(f"degree {self.degree} form needs {self.degree + 1} coefficients")

    @classmethod
    def of(cls, coeffs: Sequence) -> BinaryForm:
        return cls(len(coeffs) - 1, tuple(Fraction(c) for c in coeffs))

    @classmethod
    def zero(cls, degree: int) -> BinaryForm:
        return cls(degree, (ZERO,) * (degree + 1))

    @classmethod
    def monomial(cls, degree: int, i: int, coeff=1) -> BinaryForm:
        """``coeff * X^(degree-i) Y^i``."""
        if not 0 <= i <= degree:
            raise IndexError(f"monomial index {i} outside 0..{degree}")
        c = [ZERO] * (degree + 1)
        c[i] = Fraction(coeff)
        return cls(degree, tuple(c))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __add__(self, other: BinaryForm) -> BinaryForm:
        if self.degree != other.degree:
            raise ValueError("degree mismatch")
        return BinaryForm(self.degree, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: BinaryForm) -> BinaryForm:
        return self + other.scale(-1)

    def __neg__(self) -> BinaryForm:
        return self.scale(-1)

    def scale(self, factor) -> BinaryForm:
        f = Fraction(factor)
        return BinaryForm(self.degree, tuple(a * f for a in self.coeffs))

    def __mul__(self, other: BinaryForm) -> BinaryForm:
        return BinaryForm(self.degree + other.degree, tuple(_poly_mul(self.coeffs, other.coeffs)))

    def partial(self, var: str, order: int = 1) -> BinaryForm:
        """Partial derivative in ``X`` or ``Y``.

        Differentiating below degree zero gives the degree-0 zero form.
        """
        if order < 0:
            raise ValueError("order must be nonnegative")
        d = self.degree
        if order > d:
            return BinaryForm.zero(0)
        if var == "X":
            c = [self.coeffs[i] * _falling(d - i, order) for i in range(d - order + 1)]
        elif var == "Y":
            c = [self.coeffs[i + order] * _falling(i + order, order) for i in range(d - order + 1)]
        else:
            raise ValueError(f"unknown variable {var!r}")
        return BinaryForm(d - order, tuple(c))

    def substitute(self, m: Mat2) -> BinaryForm:
        """``F((X, Y) . m)``, see :func:`act`."""
        return BinaryForm(self.degree, tuple(_apply_subst(substitution_matrix(self.degree, m), self.coeffs)))


# -- bi-forms ----------------------------------------------------------------


@dataclass(frozen=True)
class BiForm:
    xdeg: int
    ydeg: int
    coeffs: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if self.xdeg < 0 or self.ydeg < 0:
            raise ValueError("bidegree must be nonnegative")
        if len(self.coeffs) != self.xdeg + 1 or any(len(r) != self.ydeg + 1 for r in self.coeffs):
            raise ValueError(f"coefficient grid must be {self.xdeg + 1}x{self.ydeg + 1}")

    @property
    def bidegree(self) -> tuple[int, int]:
        return (self.xdeg, self.ydeg)

    @property
    def dim(self) -> int:
        return (self.xdeg + 1) * (self.ydeg + 1)

    @classmethod
    def of(cls, grid: Sequence[Sequence]) -> BiForm:
        g = tuple(tuple(Fraction(c) for c in row) for row in grid)
        return cls(len(g) - 1, len(g[0]) - 1, g)

    @classmethod
    def zero(cls, a: int, b: int) -> BiForm:
        return cls(a, b, tuple((ZERO,) * (b + 1) for _ in range(a + 1)))

    @classmethod
    def from_terms(cls, a: int, b: int, terms) -> BiForm:
        """Build from ``(coeff, i, j)`` triples, summing repeats."""
        grid = [[ZERO] * (b + 1) for _ in range(a + 1)]
        for c, i, j in terms:
            if not (0 <= i <= a and 0 <= j <= b):
                raise IndexError(f"monomial ({i},{j}) outside bidegree ({a},{b})")
            grid[i][j] += Fraction(c)
        return cls(a, b, tuple(map(tuple, grid)))

    @classmethod
    def tensor(cls, F: BinaryForm, G: BinaryForm) -> BiForm:
        """``F(x, y) * G(X, Y)``."""
        return cls(F.degree, G.degree, tuple(tuple(f * g for g in G.coeffs) for f in F.coeffs))

    @classmethod
    def from_vector(cls, a: int, b: int, vec: Sequence) -> BiForm:
        if len(vec) != (a + 1) * (b + 1):
            raise ValueError("vector length does not match bidegree")
        w = b + 1
        return cls(a, b, tuple(tuple(Fraction(x) for x in vec[i * w:(i + 1) * w]) for i in range(a + 1)))

    def vector(self) -> tuple[Fraction, ...]:
        """Coefficients flattened in row-major ``(i, j)`` order."""
        return tuple(c for row in self.coeffs for c in row)

    def terms(self):
        """Yield ``(coeff, i, j)`` for the nonzero coefficients, row-major."""
        for i, row in enumerate(self.coeffs):
            for j, c in enumerate(row):
                if c:
                    yield c, i, j

    def is_zero(self) -> bool:
        return not any(any(row) for row in self.coeffs)

    def __add__(self, other: BiForm) -> BiForm:
        if self.bidegree != other.bidegree:
            raise ValueError(f"bidegree mismatch {self.bidegree} vs {other.bidegree}")
        return BiForm(self.xdeg, self.ydeg, tuple(
            tuple(p + q for p, q in zip(r1, r2)) for r1, r2 in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: BiForm) -> BiForm:
        return self + other.scale(-1)

    def __neg__(self) -> BiForm:
        return self.scale(-1)

    def scale(self, factor) -> BiForm:
        f = Fraction(factor)
        return BiForm(self.xdeg, self.ydeg, tuple(tuple(c * f for c in row) for row in self.coeffs))

    def __mul__(self, other: BiForm) -> BiForm:
        a, b = self.xdeg + other.xdeg, self.ydeg + other.ydeg
        grid = [[ZERO] * (b + 1) for _ in range(a + 1)]
        for c1, i1, j1 in self.terms():
            for c2, i2, j2 in other.terms():
                grid[i1 + i2][j1 + j2] += c1 * c2
        return BiForm(a, b, tuple(map(tuple, grid)))


def monomial(a: int, b: int, i: int, j: int) -> BiForm:
    """The basis monomial ``x^(a-i) y^i X^(b-j) Y^j``."""
    if not (0 <= i <= a and 0 <= j <= b):
        raise IndexError(f"monomial ({i},{j}) outside bidegree ({a},{b})")
    return BiForm.from_terms(a, b, [(1, i, j)])


def add(P: BiForm, Q: BiForm) -> BiForm:
    return P + Q


def scale(P: BiForm, factor) -> BiForm:
    return P.scale(factor)


def partial_derivative(P: BiForm, var: str, order: int = 1) -> BiForm:
    """``order``-th partial derivative of ``P`` in one of ``x, y, X, Y``.

    If the order exceeds the degree in that variable pair the result is the
    zero form with the lowered degree clamped at 0.
    """
    if order < 0:
        raise ValueError("order must be nonnegative")
    a, b = P.bidegree
    if var in ("x", "y"):
        if order > a:
            return BiForm.zero(0, b)
        cols = [BinaryForm(a, tuple(P.coeffs[i][j] for i in range(a + 1))).partial(var.upper(), order)
                for j in range(b + 1)]
        return BiForm(a - order, b, tuple(tuple(col.coeffs[i] for col in cols) for i in range(a - order + 1)))
    if var in ("X", "Y"):
        if order > b:
            return BiForm.zero(a, 0)
        rows = [BinaryForm(b, row).partial(var, order).coeffs for row in P.coeffs]
        return BiForm(a, b - order, tuple(rows))
    raise ValueError(f"unknown variable {var!r}")


# -- group action --------------------------------------------------------------


def _mat(rows) -> Mat2:
    (p, q), (r, s) = rows
    return ((Fraction(p), Fraction(q)), (Fraction(r), Fraction(s)))


def _mat_mul(m: Mat2, n: Mat2) -> Mat2:
    return tuple(
        tuple(sum((m[i][k] * n[k][j] for k in range(2)), ZERO) for j in range(2)) for i in range(2)
    )


def _det(m: Mat2) -> Fraction:
    return m[0][0] * m[1][1] - m[0][1] * m[1][0]


IDENTITY: Mat2 = ((ONE, ZERO), (ZERO, ONE))


@dataclass(frozen=True)
class GroupElement:
    """An element ``(left, right)`` of SL2 x SL2."""

    left: Mat2 = IDENTITY
    right: Mat2 = IDENTITY

    def __post_init__(self):
        object.__setattr__(self, "left", _mat(self.left))
        object.__setattr__(self, "right", _mat(self.right))
        if _det(self.left) != 1 or _det(self.right) != 1:
            raise ValueError("both factors must have determinant 1")

    def __mul__(self, other: GroupElement) -> GroupElement:
        return GroupElement(_mat_mul(self.left, other.left), _mat_mul(self.right, other.right))

    @classmethod
    def identity(cls) -> GroupElement:
        return cls()

    @classmethod
    def scalar(cls, left_sign: int, right_sign: int) -> GroupElement:
        """``(left_sign * I, right_sign * I)`` for signs in {1, -1}."""
        return cls(((left_sign, 0), (0, left_sign)), ((right_sign, 0), (0, right_sign)))

    @classmethod
    def random(cls, rng: random.Random, height: int = 5) -> GroupElement:
        return cls(random_sl2(rng, height), random_sl2(rng, height))


def random_sl2(rng: random.Random, height: int = 5) -> Mat2:
    """Random rational SL2 matrix: a product of unipotents and a torus element."""

    def q():
        return Fraction(rng.randint(-height, height), rng.randint(1, height))

    lam = Fraction(rng.choice([-1, 1]) * rng.randint(1, height), rng.randint(1, height))
    m = _mat(((1, q()), (0, 1)))
    m = _mat_mul(m, _mat(((1, 0), (q(), 1))))
    m = _mat_mul(m, ((lam, ZERO), (ZERO, 1 / lam)))
    return _mat_mul(m, _mat(((1, q()), (0, 1))))


def substitution_matrix(d: int, m: Mat2) -> list[list[Fraction]]:
    """Matrix of ``F(X, Y) -> F(m11 X + m21 Y, m12 X + m22 Y)`` on ``V_d``.

    Column ``i`` holds the coefficients of the image of ``X^(d-i) Y^i``.
    """
    new_x = [m[0][0], m[1][0]]  # m11 X + m21 Y
    new_y = [m[0][1], m[1][1]]  # m12 X + m22 Y
    xp = [[ONE]]
    yp = [[ONE]]
    for _ in range(d):
        xp.append(_poly_mul(xp[-1], new_x))
        yp.append(_poly_mul(yp[-1], new_y))
    cols = [_poly_mul(xp[d - i], yp[i]) for i in range(d + 1)]
    return [[cols[i][k] for i in range(d + 1)] for k in range(d + 1)]


def _apply_subst(S: list[list[Fraction]], coeffs: Sequence[Fraction]) -> list[Fraction]:
    nz = [(i, c) for i, c in enumerate(coeffs) if c]
    return [sum((row[i] * c for i, c in nz), ZERO) for row in S]


def act(g: GroupElement, P: BiForm) -> BiForm:
    """``(g . P)(x, y, X, Y) = P((x, y) . g.left, (X, Y) . g.right)``.

    Here ``(x, y) . M = (m11 x + m21 y, m12 x + m22 y)``.  This is a left
    action: ``act(g, act(h, P)) == act(g * h, P)``.
    """
    a, b = P.bidegree
    Sl = substitution_matrix(a, g.left)
    Sr = substitution_matrix(b, g.right)
    # grid' = Sl . grid . Sr^T
    rows = [_apply_subst(Sr, row) for row in P.coeffs]
    cols = [_apply_subst(Sl, [rows[i][j] for i in range(a + 1)]) for j in range(b + 1)]
    return BiForm(a, b, tuple(tuple(cols[j][i] for j in range(b + 1)) for i in range(a + 1)))
