"""Choice of bi-transvectant ``T: V_(3,b) x V_(a',b') -> V_(a'',b'')`` per odd b.

The choice depends on ``b mod 5`` (with ``b = 7`` handled separately).
Only ``(r, s)`` and ``(a', b')`` are stored; the target bidegree, ``c`` and
``N`` are recomputed from dimensions and checked against the invariants the
rationality argument needs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .transvectants import TransvectantSpec

FAMILIES = ("B5n", "B5n1", "B5n2", "B5n3", "B5n4", "B7")

# residue -> (family, (r, s), (a', b')) as functions of n
_ROWS = {
    0: ("B5n", lambda n: (3, n), lambda n: (3, n)),
    1: ("B5n1", lambda n: (1, 3 * n + 1), lambda n: (1, 3 * n + 1)),
    2: ("B5n2", lambda n: (3, n), lambda n: (3, n)),
    3: ("B5n3", lambda n: (3, n), lambda n: (3, n + 1)),
    4: ("B5n4", lambda n: (1, 3 * n + 3), lambda n: (1, 3 * n + 4)),
}
_B7 = ((2, 3), (3, 3))


class ScheduleError(ValueError):
    """Input outside the range the construction covers (even b, b < 5, ...)."""


def _require(cond: bool, what: str) -> None:
    if not cond:
        raise AssertionError(f"schedule invariant violated: {what}")


def dim_biform(p: int, q: int) -> int:
    return (p + 1) * (q + 1)


@dataclass(frozen=True)
class Schedule:
    b: int
    n: Optional[int]
    rs: tuple[int, int]
    src2: tuple[int, int]
    target: tuple[int, int]
    c: int
    N: int
    family: str

    @property
    def spec(self) -> TransvectantSpec:
        return TransvectantSpec(self.rs[0], self.rs[1], (3, self.b), self.src2)

    @property
    def dim_source(self) -> int:
        return dim_biform(3, self.b)

    @property
    def dim_src2(self) -> int:
        return dim_biform(*self.src2)

    @property
    def dim_target(self) -> int:
        return dim_biform(*self.target)

    def check(self) -> None:
        """Raise AssertionError if any structural constraint fails."""
        (r, s), (a2, b2) = self.rs, self.src2
        _require(self.target == (3 + a2 - 2 * r, self.b + b2 - 2 * s), "target bidegree")
        _require(min(self.target) >= 0, "target bidegree nonnegative")
        _require(self.c == self.dim_src2 - self.dim_target, "c = dim V' - dim V''")
        _require(self.c in (1, 3), "c in {1, 3}")
        _require(a2 % 2 == 1 and b2 % 2 == 1 and self.c % 2 == 1, "a', b', c odd")
        _require(self.dim_source > self.c * self.dim_target, "dim V(3,b) > c dim V''")
        _require(self.N == (self.dim_source - 1) - self.c * (self.dim_src2 - self.c), "N")


def _build(b: int, n: Optional[int], family: str, rs, src2) -> Schedule:
    r, s = rs
    a2, b2 = src2
    target = (3 + a2 - 2 * r, b + b2 - 2 * s)
    c = dim_biform(a2, b2) - dim_biform(*target)
    N = (dim_biform(3, b) - 1) - c * (dim_biform(a2, b2) - c)
    return Schedule(b, n, tuple(rs), tuple(src2), target, c, N, family)


def table_row(family: str, n: int) -> Schedule:
    """Row of the table for a family at parameter n, without parity checks.

    Used to audit the c and N columns as functions of n.
    """
    if family == "B7":
        return _build(7, None, "B7", *_B7)
    for res, (fam, rs, src2) in _ROWS.items():
        if fam == family:
            return _build(5 * n + res, n, fam, rs(n), src2(n))
    raise KeyError(family)


def schedule_for(b: int) -> Schedule:
    if not isinstance(b, int) or b % 2 == 0 or b < 5:
        raise ScheduleError(f"b must be an odd integer >= 5, got {b!r}")
    if b == 7:
        sched = table_row("B7", 0)
    else:
        res = b % 5
        n = (b - res) // 5
        sched = table_row(_ROWS[res][0], n)
        # parities follow from b odd; checked anyway
        _require(n % 2 == (0 if res in (1, 3) else 1), f"parity of n for b = {res} mod 5")
        if res == 2:
            _require(n > 1, "n > 1 when b = 2 mod 5")
    sched.check()
    return sched


def genus_to_bidegree(g: int) -> tuple[int, int]:
    """Bidegree on P^1 x P^1 of the canonical model of a trigonal curve of genus g = 4N."""
    if g < 5 or g % 4 != 0:
        raise ScheduleError(f"genus must be >= 5 and divisible by 4, got {g}")
    return (3, 2 * (g // 4) + 1)


def moduli_dimension(b: int) -> int:
    """``dim P V_(3,b) - dim(SL2 x SL2) = 4b - 3``."""
    if b < 1:
        raise ScheduleError("b must be positive")
    return dim_biform(3, b) - 1 - 6
