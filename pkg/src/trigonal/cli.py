"""Command-line front end.

Exit status: 0 when everything requested passed, 1 when some verification
condition failed, 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from .formio import ParseError, parse_biform, print_biform, report_to_json
from .schedule import ScheduleError, dim_biform, genus_to_bidegree, moduli_dimension, schedule_for
from .transvectants import TransvectantSpec, bi_transvect, clebsch_gordan_dims
from .verifier import MODES, VerificationReport, verify, verify_range
from .witnesses import MUTATIONS


class UsageError(Exception):
    pass


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="trigonal", description=(
        "Exact transvectant calculus and certification of the double-bundle "
        "non-degeneracy condition for PV(3,b) / SL2 x SL2."))
    sub = p.add_subparsers(dest="command", required=True)

    def add_verify_opts(sp):
        sp.add_argument("--mode", choices=MODES, default="witness")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--height", type=_nonneg, default=10)
        sp.add_argument("--max-attempts", type=_positive, default=5)
        sp.add_argument("--format", choices=("text", "json"), default="text")
        sp.add_argument("--no-timing", action="store_true",
                        help="report elapsed_ms as 0 so output is byte-stable")

    v = sub.add_parser("verify", help="verify one b")
    v.add_argument("--b", type=int, required=True)
    v.add_argument("--tamper", choices=MUTATIONS, help="break the witness set first (witness mode)")
    add_verify_opts(v)

    r = sub.add_parser("verify-range", help="verify every odd b in [from, to]")
    r.add_argument("--from", dest="start", type=int, required=True)
    r.add_argument("--to", dest="stop", type=int, required=True)
    r.add_argument("--jobs", type=_positive, default=1)
    add_verify_opts(r)

    t = sub.add_parser("transvect", help="compute T^(r,s)(lhs, rhs)")
    t.add_argument("--r", type=_nonneg, required=True)
    t.add_argument("--s", type=_nonneg, required=True)
    t.add_argument("--lhs", required=True)
    t.add_argument("--rhs", required=True)

    s = sub.add_parser("schedule", help="the bi-transvectant chosen for b")
    s.add_argument("--b", type=int, required=True)
    s.add_argument("--format", choices=("text", "json"), default="text")

    d = sub.add_parser("dims", help="dimension bookkeeping")
    g = d.add_mutually_exclusive_group(required=True)
    g.add_argument("--b", type=int)
    g.add_argument("--genus", type=int)
    g.add_argument("--cg", type=_nonneg, nargs=2, metavar=("D", "E"),
                   help="Clebsch-Gordan degrees of V_D (x) V_E")
    return p


_HEADER = (f"{'b':>4} {'family':<6} {'(r,s)':<10} {'(a2,b2)':<10} {'(a3,b3)':<10} "
           f"{'c':>2} {'N':>5}  {'i':<4} {'ii':<4} {'iii':<4} {'iv':<4} "
           f"{'rk3':>5} {'rk4':>5} {'ker':>4} {'try':>3}  result")


def _text_line(rep: VerificationReport) -> str:
    if rep.error is not None:
        return f"{rep.b:>4} ERROR {rep.error}"
    s = rep.schedule
    conds = "  ".join(f"{'ok' if ok else 'FAIL':<3}" for ok in rep.conditions.values())
    return (f"{rep.b:>4} {s.family:<6} {str(s.rs).replace(' ', ''):<10} "
            f"{str(s.src2).replace(' ', ''):<10} {str(s.target).replace(' ', ''):<10} "
            f"{s.c:>2} {s.N:>5}  {conds} "
            f"{rep.cond_iii.achieved:>5} {rep.cond_iv.achieved:>5} {rep.kernel_dim:>4} {rep.attempts:>3}  "
            f"{'PASS' if rep.passed else 'FAIL'}")


def _emit_reports(reports, fmt: str, timing: bool, out) -> int:
    if fmt == "text":
        print(_HEADER, file=out)
    for rep in reports:
        print(report_to_json(rep, timing) if fmt == "json" else _text_line(rep), file=out)
    return 0 if all(r.passed for r in reports) else 1


def _verify_kwargs(args) -> dict:
    return dict(seed=args.seed, height=args.height, max_attempts=args.max_attempts)


def _cmd_verify(args, out) -> int:
    if args.tamper and args.mode == "generic":
        raise UsageError("--tamper applies to witness mode only")
    try:
        schedule_for(args.b)
    except ScheduleError as exc:
        raise UsageError(str(exc)) from exc
    rep = verify(args.b, args.mode, mutation=args.tamper, **_verify_kwargs(args))
    return _emit_reports([rep], args.format, not args.no_timing, out)


def _cmd_range(args, out) -> int:
    if args.start > args.stop:
        raise UsageError("--from must not exceed --to")
    if args.start < 5:
        raise UsageError("--from must be at least 5")
    bs = [b for b in range(args.start, args.stop + 1) if b % 2 == 1]
    reports = verify_range(bs, args.mode, jobs=args.jobs, **_verify_kwargs(args))
    return _emit_reports(reports, args.format, not args.no_timing, out)


def _cmd_transvect(args, out) -> int:
    try:
        P, Q = parse_biform(args.lhs), parse_biform(args.rhs)
        spec = TransvectantSpec(args.r, args.s, P.bidegree, Q.bidegree)
    except (ParseError, ValueError) as exc:
        raise UsageError(str(exc)) from exc
    print(print_biform(bi_transvect(P, Q, spec)), file=out)
    return 0


def _cmd_schedule(args, out) -> int:
    try:
        s = schedule_for(args.b)
    except ScheduleError as exc:
        raise UsageError(str(exc)) from exc
    if args.format == "json":
        print(json.dumps({"b": s.b, "family": s.family, "n": s.n, "r": s.rs[0], "s": s.rs[1],
                          "a2": s.src2[0], "b2": s.src2[1], "a3": s.target[0], "b3": s.target[1],
                          "c": s.c, "N": s.N}, separators=(",", ":")), file=out)
    else:
        print(f"b={s.b} family={s.family} n={s.n} (r,s)={s.rs} (a',b')={s.src2} "
              f"(a'',b'')={s.target} c={s.c} N={s.N}", file=out)
    return 0


def _cmd_dims(args, out) -> int:
    if args.cg is not None:
        d, e = args.cg
        if e > d:
            d, e = e, d
        degs = clebsch_gordan_dims(d, e)
        print(" + ".join(f"V_{k}" for k in degs), f"  ({sum(k + 1 for k in degs)} = {d + 1}*{e + 1})", file=out)
        return 0
    try:
        b = genus_to_bidegree(args.genus)[1] if args.genus is not None else args.b
        s = schedule_for(b)
    except ScheduleError as exc:
        raise UsageError(str(exc)) from exc
    if args.genus is not None:
        print(f"genus {args.genus} -> bidegree (3,{b})", file=out)
    print(f"dim V(3,{b}) = {dim_biform(3, b)}", file=out)
    print(f"dim V{s.src2} = {s.dim_src2}, dim V{s.target} = {s.dim_target}, c = {s.c}", file=out)
    print(f"c * dim V{s.target} = {s.c * s.dim_target}", file=out)
    print(f"N = {s.N}", file=out)
    print(f"moduli dimension = {moduli_dimension(b)}", file=out)
    return 0


_COMMANDS = {
    "verify": _cmd_verify,
    "verify-range": _cmd_range,
    "transvect": _cmd_transvect,
    "schedule": _cmd_schedule,
    "dims": _cmd_dims,
}


def run(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args, out)
    except UsageError as exc:
        print(f"trigonal: error: {exc}", file=err)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
