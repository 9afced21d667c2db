"""Certification of the double-bundle non-degeneracy condition.

For ``T = T^(r,s): V_(3,b) x V_(a',b') -> V_(a'',b'')`` the kernel map
``v -> ker T(v, .)`` into the Grassmannian ``G(c, V_(a',b'))`` is defined
somewhere and dominant iff some ``v, w_1..w_c`` satisfy

  (i)   the w_i are linearly independent,
  (ii)  T(v, w_i) = 0 for all i,
  (iii) T(v, .) is surjective,
  (iv)  (T(., w_1), ..., T(., w_c)) is surjective.

All four are always evaluated, with exact ranks, so a failing report says
precisely what broke.
"""

from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Optional, Sequence

from .exact_linalg import RatMatrix, kernel_basis, rank, solve_membership
from .forms import BiForm
from .schedule import Schedule, ScheduleError, schedule_for
from .transvectants import bi_transvect, matrix_of_left_slot_stacked, matrix_of_right_slot
from .witnesses import WitnessSet, tamper, witnesses_for

MODES = ("witness", "generic", "both")
CONDITIONS = ("i", "ii", "iii", "iv")


@dataclass(frozen=True)
class Condition:
    passed: bool
    achieved: int
    required: int


@dataclass(frozen=True)
class VerificationReport:
    b: int
    mode: str
    schedule: Optional[Schedule] = None
    cond_i: Optional[Condition] = None
    cond_ii: Optional[Condition] = None
    cond_iii: Optional[Condition] = None
    cond_iv: Optional[Condition] = None
    kernel_dim: int = 0
    kernel_equals_span: bool = False
    attempts: int = 0
    elapsed: float = 0.0
    mutation: Optional[str] = None
    error: Optional[str] = None

    @property
    def conditions(self) -> dict[str, bool]:
        return {k: bool(c and c.passed) for k, c in zip(
            CONDITIONS, (self.cond_i, self.cond_ii, self.cond_iii, self.cond_iv))}

    @property
    def failed(self) -> set[str]:
        return {k for k, ok in self.conditions.items() if not ok}

    @property
    def passed(self) -> bool:
        return self.error is None and all(self.conditions.values())


@dataclass
class _Checks:
    cond: dict = field(default_factory=dict)
    kernel_dim: int = 0
    kernel_equals_span: bool = False


def check_conditions(sched: Schedule, v: BiForm, ws: Sequence[BiForm],
                     right: Optional[RatMatrix] = None, right_rank: Optional[int] = None) -> _Checks:
    """Evaluate (i)-(iv) for explicit vectors, plus the kernel/span datum."""
    spec = sched.spec
    c, dim3 = sched.c, sched.dim_target
    out = _Checks()

    wmat = RatMatrix.from_rows([w.vector() for w in ws], cols=sched.dim_src2)
    rk_w = rank(wmat)
    out.cond["i"] = Condition(len(ws) == c and rk_w == c, rk_w, c)

    vanish = sum(1 for w in ws if bi_transvect(v, w, spec).is_zero())
    out.cond["ii"] = Condition(vanish == len(ws), vanish, len(ws))

    if right is None:
        right = matrix_of_right_slot(v, spec)
    if right_rank is None:
        right_rank = rank(right)
    out.cond["iii"] = Condition(right_rank == dim3, right_rank, dim3)

    stacked = matrix_of_left_slot_stacked(list(ws), spec)
    rk4 = rank(stacked)
    out.cond["iv"] = Condition(rk4 == c * dim3, rk4, c * dim3)

    out.kernel_dim = sched.dim_src2 - right_rank
    if out.kernel_dim == rk_w:
        kernel = kernel_basis(right)
        out.kernel_equals_span = all(solve_membership(w.vector(), kernel) for w in ws)
    return out


def _report(b, mode, sched, checks: _Checks, attempts, t0, mutation=None) -> VerificationReport:
    return VerificationReport(
        b=b, mode=mode, schedule=sched,
        cond_i=checks.cond["i"], cond_ii=checks.cond["ii"],
        cond_iii=checks.cond["iii"], cond_iv=checks.cond["iv"],
        kernel_dim=checks.kernel_dim, kernel_equals_span=checks.kernel_equals_span,
        attempts=attempts, elapsed=time.perf_counter() - t0, mutation=mutation,
    )


def verify_witness_set(wset: WitnessSet) -> VerificationReport:
    t0 = time.perf_counter()
    sched = schedule_for(wset.b)
    checks = check_conditions(sched, wset.v, wset.ws)
    return _report(wset.b, "witness", sched, checks, 0, t0, wset.mutation)


def verify_witness(b: int, mutation: Optional[str] = None) -> VerificationReport:
    """Check the explicit witnesses for ``b``, optionally after a tamper mutation."""
    wset = witnesses_for(b)
    if mutation is not None:
        wset = tamper(wset, mutation)
    return verify_witness_set(wset)


def random_biform(rng: random.Random, a: int, b: int, height: int) -> BiForm:
    return BiForm.of([[rng.randint(-height, height) for _ in range(b + 1)] for _ in range(a + 1)])


def verify_generic(b: int, seed: int = 0, height: int = 10, max_attempts: int = 5) -> VerificationReport:
    """Certify the condition at a random integer point instead of the witnesses.

    ``v`` is resampled (at most ``max_attempts`` times) until ``T(v, .)`` is
    surjective; the w_i are then the echelon basis of its kernel.  If every
    attempt is degenerate the report fails (iii) and carries the last sample.
    """
    if height < 0:
        raise ValueError("height must be nonnegative")
    if max_attempts < 1:
        raise ValueError("max_attempts must be positive")
    t0 = time.perf_counter()
    sched = schedule_for(b)
    spec = sched.spec
    rng = random.Random(f"{b}:{seed}:{height}")
    for attempt in range(1, max_attempts + 1):
        v = random_biform(rng, 3, b, height)
        right = matrix_of_right_slot(v, spec)
        rk = rank(right)
        if rk == sched.dim_target:
            break
    kernel = kernel_basis(right)[:sched.c]
    a2, b2 = sched.src2
    ws = [BiForm.from_vector(a2, b2, k) for k in kernel]
    checks = check_conditions(sched, v, ws, right=right, right_rank=rk)
    return _report(b, "generic", sched, checks, attempt, t0)


def _merge_both(w: VerificationReport, g: VerificationReport) -> VerificationReport:
    def both(x: Condition, y: Condition) -> Condition:
        return Condition(x.passed and y.passed, x.achieved, x.required)

    return replace(
        w, mode="both",
        cond_i=both(w.cond_i, g.cond_i), cond_ii=both(w.cond_ii, g.cond_ii),
        cond_iii=both(w.cond_iii, g.cond_iii), cond_iv=both(w.cond_iv, g.cond_iv),
        kernel_equals_span=w.kernel_equals_span and g.kernel_equals_span,
        attempts=g.attempts, elapsed=w.elapsed + g.elapsed,
    )


def verify(b: int, mode: str = "witness", seed: int = 0, height: int = 10,
           max_attempts: int = 5, mutation: Optional[str] = None) -> VerificationReport:
    """Dispatch on ``mode``; "both" runs both and fails unless both pass."""
    if mode == "witness":
        return verify_witness(b, mutation)
    if mode == "generic":
        return verify_generic(b, seed, height, max_attempts)
    if mode == "both":
        return _merge_both(verify_witness(b, mutation), verify_generic(b, seed, height, max_attempts))
    raise ValueError(f"unknown mode {mode!r}")


def _safe_verify(args) -> VerificationReport:
    b, mode, kwargs = args
    try:
        return verify(b, mode, **kwargs)
    except (ScheduleError, ValueError, TypeError) as exc:
        return VerificationReport(b=b, mode=mode, error=f"{type(exc).__name__}: {exc}")


def verify_range(bs: Sequence[int], mode: str = "witness", jobs: int = 1, **kwargs) -> list[VerificationReport]:
    """Verify each b; per-item errors are recorded, never raised.

    Reports come back in input order whatever ``jobs`` is.
    """
    if jobs < 1:
        raise ValueError("jobs must be >= 1")
    items = [(b, mode, kwargs) for b in bs]
    if jobs == 1 or len(items) <= 1:
        return [_safe_verify(it) for it in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_safe_verify, items))
