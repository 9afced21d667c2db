"""Exact rational linear algebra: rank, kernel and span membership.

Scalars are :class:`fractions.Fraction` throughout.  Matrices are stored
densely; elimination itself runs on integer rows held as ``{column: value}``
dicts so that the mostly-zero matrices produced by monomial transvection
keep their sparsity while being reduced.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from gmpy2 import gcd as _gcd, mpz

Rational = Fraction
Vector = tuple[Fraction, ...]


def binomial(n: int, k: int) -> Fraction:
    """C(n, k) as an exact rational; zero outside ``0 <= k <= n``."""
    if k < 0 or k > n:
        return Fraction(0)
    return Fraction(math.comb(n, k))


@dataclass(frozen=True)
class RatMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError(f"entries do not form a {self.rows}x{self.cols} grid")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> RatMatrix:
        data = tuple(tuple(Fraction(x) for x in r) for r in rows)
        if cols is None:
            cols = len(data[0]) if data else 0
        return cls(len(data), cols, data)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> RatMatrix:
        zero = Fraction(0)
        return cls(rows, cols, tuple((zero,) * cols for _ in range(rows)))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int) -> RatMatrix:
        for c in columns:
            if len(c) != rows:
                raise ValueError("column length mismatch")
        return cls(rows, len(columns), tuple(tuple(c[i] for c in columns) for i in range(rows)))

    @classmethod
    def vstack(cls, blocks: Sequence[RatMatrix]) -> RatMatrix:
        if not blocks:
            raise ValueError("cannot stack an empty list of matrices")
        cols = blocks[0].cols
        if any(b.cols != cols for b in blocks):
            raise ValueError("column counts differ")
        return cls(sum(b.rows for b in blocks), cols, tuple(r for b in blocks for r in b.entries))

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.entries[i][j]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.entries)

    def apply(self, vec: Sequence) -> Vector:
        """Matrix-vector product ``M @ vec``."""
        if len(vec) != self.cols:
            raise ValueError(f"vector length {len(vec)} != {self.cols} columns")
        nz = [(j, x) for j, x in enumerate(vec) if x]
        return tuple(sum((r[j] * x for j, x in nz), Fraction(0)) for r in self.entries)

    def permute_rows(self, order: Sequence[int]) -> RatMatrix:
        return RatMatrix(self.rows, self.cols, tuple(self.entries[i] for i in order))

    def scale_row(self, i: int, factor) -> RatMatrix:
        f = Fraction(factor)
        ents = list(self.entries)
        ents[i] = tuple(x * f for x in ents[i])
        return RatMatrix(self.rows, self.cols, tuple(ents))

    def nonzero_count(self) -> int:
        return sum(1 for r in self.entries for x in r if x)


# -- fraction-free elimination -------------------------------------------------


def _integer_row(row: Iterable[Fraction]) -> dict[int, mpz]:
    """Clear denominators of one row and make it primitive."""
    items = [(j, Fraction(x)) for j, x in enumerate(row) if x]
    if not items:
        return {}
    den = math.lcm(*(x.denominator for _, x in items))
    out = {j: mpz(x.numerator * (den // x.denominator)) for j, x in items}
    return _primitive(out)


def _primitive(row: dict[int, int]) -> dict[int, int]:
    g = _gcd(*row.values())
    if g != 1:
        row = {j: v // g for j, v in row.items()}
    return row


def _combine(row: dict[int, int], prow: dict[int, int], col: int) -> dict[int, int]:
    """Return ``p*row - a*prow`` made primitive, where it vanishes at ``col``."""
    a, p = row[col], prow[col]
    g = _gcd(a, p)
    ma, mb = p // g, a // g
    out = {j: ma * v for j, v in row.items()}
    for j, v in prow.items():
        t = out.get(j, 0) - mb * v
        if t:
            out[j] = t
        else:
            out.pop(j, None)
    if not out:
        return out
    return _primitive(out)


def _echelon(M: RatMatrix, reduced: bool) -> list[tuple[int, dict[int, int]]]:
    """Fraction-free elimination over the integers.

    Columns are processed left to right; among the candidate rows the one
    with fewest nonzeros becomes the pivot, which limits fill-in.  With
    ``reduced`` the pivot column is also cleared from earlier pivot rows, so
    the result is (up to row scaling) the reduced row echelon form.

    Returns ``[(pivot_col, row), ...]`` in pivot-column order.
    """
    active = [r for r in (_integer_row(row) for row in M.entries) if r]
    pivots: list[tuple[int, dict[int, int]]] = []
    for c in range(M.cols):
        if not active:
            break
        cand = [k for k, r in enumerate(active) if c in r]
        if not cand:
            continue
        k = min(cand, key=lambda k: (len(active[k]), abs(active[k][c])))
        prow = active.pop(k)
        nxt = []
        for r in active:
            if c in r:
                r = _combine(r, prow, c)
                if not r:
                    continue
            nxt.append(r)
        active = nxt
        if reduced:
            for idx, (pc, r) in enumerate(pivots):
                if c in r:
                    pivots[idx] = (pc, _combine(r, prow, c))
        pivots.append((c, prow))
    return pivots


def rank(M: RatMatrix) -> int:
    """Exact rank over the rationals."""
    return len(_echelon(M, reduced=False))


def kernel_basis(M: RatMatrix) -> list[Vector]:
    """Basis of the right null space ``{x : M x = 0}``.

    One vector per free column, in increasing column order; the vector for
    free column ``f`` has a 1 at ``f`` and 0 at every other free column.
    This is the unique RREF-derived basis, so the output is deterministic.
    """
    pivots = _echelon(M, reduced=True)
    pivot_cols = {c for c, _ in pivots}
    basis = []
    for f in range(M.cols):
        if f in pivot_cols:
            continue
        vec = [Fraction(0)] * M.cols
        vec[f] = Fraction(1)
        for c, row in pivots:
            if f in row:
                vec[c] = Fraction(int(-row[f]), int(row[c]))
        basis.append(tuple(vec))
    return basis


def solve_membership(v: Sequence, basis: Sequence[Sequence]) -> bool:
    """True iff ``v`` lies in the span of ``basis``."""
    if any(len(b) != len(v) for b in basis):
        raise ValueError("vectors must share one length")
    if not any(v):
        return True
    if not basis:
        return False
    B = RatMatrix.from_rows(basis, cols=len(v))
    Bv = RatMatrix.from_rows(list(basis) + [v], cols=len(v))
    return rank(Bv) == rank(B)
