"""Command-line entry point: ``ffgrowth <subcommand> [flags]``.

Exit status: 0 on success, 2 on invalid flags or inputs, 1 when a proven
inequality fails on concrete data (which means a bug).
"""
from __future__ import annotations

import argparse
import csv
import io
import logging
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .conditions import check_hypothesis_thm1, check_hypothesis_thm2
from .energy import (additive_energy, cs_growth_check, energy_sum_over_ratios,
                     mixed_energy)
from .errors import FFGrowthError, InternalInvariantViolation
from .field import build_field
from .harness import (MODELS, OBJECTIVES, extremal_search, measure, parse_n_range,
                      records_to_csv, sweep)
from .lemmas import (exact_cover, greedy_cover, katz_shen_search,
                     lemma32_cover_profile, plunnecke_check)
from .report import render
from .sets import (FSet, classify_case, classify_case_xy, difference_set, dilate,
                   distance_composite, inverse_set, negate, product_set, ratio_set,
                   square_set, sumset, translate)
from .setfile import dumps, read_set
from .subfields import subfield_lattice

log = logging.getLogger("ffgrowth")

BINARY_OPS = {
    "sumset": sumset,
    "difference": difference_set,
    "product": product_set,
    "ratio": ratio_set,
    "union": lambda A, B: A | B,
    "intersection": lambda A, B: A & B,
}
UNARY_OPS = {
    "square": square_set,
    "distance": distance_composite,
    "inverse": inverse_set,
    "negate": negate,
}
SCALAR_OPS = {"dilate": dilate, "translate": translate}


class UsageError(Exception):
    def __init__(self, flag: str, message: str):
        super().__init__(f"{flag}: {message}")


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected a number like 0.1 or 1/10, got {text!r}") from None


def _add_output(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.add_argument("--out", help="write the report here instead of standard output")


def _add_field_flags(p: argparse.ArgumentParser, required: bool) -> None:
    p.add_argument("--p", type=int, required=required, help="field characteristic")
    p.add_argument("--k", type=int, default=None, help="extension degree (default 1)")
    p.add_argument("--modulus", type=_int_list, default=None,
                   help="defining polynomial, coefficients low degree first")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ffgrowth", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("field", help="field parameters and subfield lattice")
    _add_field_flags(p, required=True)
    _add_output(p)

    p = sub.add_parser("setop", help="evaluate one set expression")
    p.add_argument("--file", required=True)
    p.add_argument("--op", required=True, choices=sorted([*BINARY_OPS, *UNARY_OPS, *SCALAR_OPS]))
    p.add_argument("--rhs", help="second operand set file")
    p.add_argument("--scalar", type=int, help="field element for dilate/translate")
    _add_field_flags(p, required=False)
    p.add_argument("--out")

    p = sub.add_parser("classify", help="closure case of the ratio set")
    p.add_argument("--file", required=True)
    p.add_argument("--x", help="classify R(X, Y) with X from this file and Y from --file")
    _add_field_flags(p, required=False)
    _add_output(p)

    p = sub.add_parser("hypothesis", help="subfield-avoidance hypothesis of a theorem")
    p.add_argument("--theorem", type=int, choices=(1, 2), required=True)
    p.add_argument("--file", required=True)
    _add_field_flags(p, required=False)
    _add_output(p)

    p = sub.add_parser("energy", help="additive or mixed energy")
    p.add_argument("--file", required=True)
    p.add_argument("--rhs", help="second set for E+(X, Y) (default: the same set)")
    p.add_argument("--mixed", action="store_true", help="E(A^2, (A-B)^2) with B = A+A")
    p.add_argument("--histogram", action="store_true", help="include the representation counts")
    _add_field_flags(p, required=False)
    _add_output(p)

    p = sub.add_parser("ratio-sum", help="sum of E+(A, rA) over the ratio set")
    p.add_argument("--file", required=True)
    _add_field_flags(p, required=False)
    _add_output(p)

    p = sub.add_parser("lemma", help="lemma checkers and covering profiles")
    p.add_argument("--which", required=True, choices=("2.1", "2.2", "2.4", "3.2"))
    p.add_argument("--file", required=True, help="the set X (or A for 3.2)")
    p.add_argument("--rhs", action="append", default=[],
                   help="B_i set file for 2.1/2.2 or Y for 2.4 (repeatable)")
    p.add_argument("--copies", type=int, default=2,
                   help="without --rhs, use this many copies of X as the B_i")
    p.add_argument("--eps", type=_fraction, default=Fraction(1, 10))
    p.add_argument("--exact", action="store_true", help="exhaustive search instead of greedy")
    p.add_argument("--csv", help="3.2 only: write per-element cover counts here")
    _add_field_flags(p, required=False)
    _add_output(p)

    p = sub.add_parser("measure", help="growth record of one set")
    p.add_argument("--file", required=True)
    p.add_argument("--normalize", action="store_true",
                   help="map A affinely so that 0, 1 lie in A before measuring")
    _add_field_flags(p, required=False)
    _add_output(p)

    p = sub.add_parser("sweep", help="seeded growth sweep written as CSV")
    p.add_argument("--model", choices=MODELS, required=True)
    _add_field_flags(p, required=True)
    p.add_argument("--n", required=True, help="sizes, e.g. 6..10 or 4,8,16")
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--subfield-degree", type=int)
    p.add_argument("--dilation", type=int)
    p.add_argument("--format", choices=("text", "json", "csv"), default="text",
                   help="format of the summary on standard output")
    p.add_argument("--out", help="write the per-record CSV here")

    p = sub.add_parser("search", help="hill-climbing search for low-growth sets")
    p.add_argument("--objective", choices=OBJECTIVES, required=True)
    _add_field_flags(p, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--iters", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--hypothesis", choices=("auto", "thm1", "thm2", "none"), default="auto")
    p.add_argument("--start", help="start set file (default: interval or random)")
    _add_output(p)
    return parser


# helpers


def _field_from_flags(args):
    k = 1 if args.k is None else args.k
    try:
        return build_field(args.p, k, args.modulus)
    except FFGrowthError as exc:
        flag = "--p" if "prime" in str(exc) or "cap" in str(exc) else "--modulus"
        raise UsageError(flag, str(exc)) from None
    except ValueError as exc:
        raise UsageError("--k", str(exc)) from None


def _load(path: str, args, flag: str = "--file") -> FSet:
    try:
        A = read_set(path)
    except OSError as exc:
        raise UsageError(flag, f"cannot read {path}: {exc.strerror}") from None
    except FFGrowthError as exc:
        raise UsageError(flag, str(exc)) from None
    F = A.field
    if getattr(args, "p", None) is not None and args.p != F.p:
        raise UsageError("--p", f"set file has p={F.p}, flag says {args.p}")
    if getattr(args, "k", None) is not None and args.k != F.k:
        raise UsageError("--k", f"set file has k={F.k}, flag says {args.k}")
    if getattr(args, "modulus", None) is not None and F.k > 1 \
            and tuple(args.modulus) != F.spec.modulus:
        raise UsageError("--modulus", f"set file has modulus {list(F.spec.modulus)}")
    return A


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _field_info(F) -> dict:
    return {"p": F.p, "k": F.k, "q": F.q}


def _hyp_dict(rep) -> dict:
    v = rep.violation
    return {
        "theorem": rep.theorem,
        "passed": rep.passed,
        "checked": rep.checked,
        "max_count_sq_over_G": rep.max_ratio,
        "violation": None if v is None else {
            "G": str(v.subfield), "G_size": v.subfield.size, "a": v.a, "b": v.b, "count": v.count},
    }


# subcommands


def cmd_field(args) -> int:
    F = _field_from_flags(args)
    data = {
        "p": F.p, "k": F.k, "q": F.q,
        "modulus": list(F.spec.modulus),
        "modulus_poly": F.spec.modulus_str() if F.k > 1 else "-",
        "primitive": F.primitive,
        "subfields": [{"d": G.d, "name": str(G), "size": G.size} for G in subfield_lattice(F)],
    }
    _emit(render(data, args.format), args.out)
    return 0


def cmd_setop(args) -> int:
    A = _load(args.file, args)
    if args.op in BINARY_OPS:
        if not args.rhs:
            raise UsageError("--rhs", f"--op {args.op} needs a second set")
        B = _load(args.rhs, args, "--rhs")
        if B.field != A.field:
            raise UsageError("--rhs", "operands live in different fields")
        result = BINARY_OPS[args.op](A, B)
    elif args.op in SCALAR_OPS:
        if args.scalar is None:
            raise UsageError("--scalar", f"--op {args.op} needs --scalar")
        if not 0 <= args.scalar < A.field.q:
            raise UsageError("--scalar", f"must lie in [0, {A.field.q})")
        result = SCALAR_OPS[args.op](args.scalar, A)
    else:
        result = UNARY_OPS[args.op](A)
    _emit(dumps(result), args.out)
    return 0


def cmd_classify(args) -> int:
    A = _load(args.file, args)
    if len(A) < 2:
        raise UsageError("--file", "classification needs at least two elements")
    if args.x:
        X = _load(args.x, args, "--x")
        if len(X) < 2:
            raise UsageError("--x", "X needs at least two elements")
        label = classify_case_xy(X, A)
        R = ratio_set(A, X)
    else:
        label = classify_case(A)
        R = ratio_set(A, A)
    data = {**_field_info(A.field), "n": len(A), "ratio_set_size": len(R), "case": label.label,
            "r": label.r, "witness": list(label.witness) if label.witness else None}
    _emit(render(data, args.format), args.out)
    return 0


def cmd_hypothesis(args) -> int:
    A = _load(args.file, args)
    rep = (check_hypothesis_thm1 if args.theorem == 1 else check_hypothesis_thm2)(A)
    _emit(render({**_field_info(A.field), "n": len(A), **_hyp_dict(rep)}, args.format), args.out)
    return 0


def cmd_energy(args) -> int:
    A = _load(args.file, args)
    if args.mixed:
        B = sumset(A, A)
        rep = mixed_energy(A, B)
        cs = cs_growth_check(A)
        data = {**_field_info(A.field), "kind": rep.kind, "n": len(A), "size_B": len(B),
                "value": rep.value, "total": rep.histogram.total,
                "cs_lhs": cs.lhs, "cs_rhs": cs.rhs, "cs_holds": cs.holds, "epsilon": cs.epsilon}
        ok = cs.holds
    else:
        Y = _load(args.rhs, args, "--rhs") if args.rhs else A
        rep = additive_energy(A, Y)
        size = len(sumset(A, Y))
        ok = size * rep.value >= (len(A) * len(Y)) ** 2
        data = {**_field_info(A.field), "kind": rep.kind, "size_X": len(A), "size_Y": len(Y),
                "value": rep.value, "total": rep.histogram.total, "size_sum": size,
                "cs_holds": ok}
    if args.histogram:
        data["histogram"] = {str(t): c for t, c in rep.histogram.as_dict().items()}
    _emit(render(data, args.format), args.out)
    if not ok:
        raise InternalInvariantViolation("Cauchy-Schwarz inequality failed")
    return 0


def cmd_ratio_sum(args) -> int:
    A = _load(args.file, args)
    if len(A) < 2:
        raise UsageError("--file", "ratio set needs at least two elements")
    res = energy_sum_over_ratios(A)
    data = {**_field_info(A.field), "n": len(A), "ratio_set_size": res.ratio_count,
            "sum": res.total, "bound": res.bound, "holds": res.holds,
            "witness_r": res.witness_r, "witness_energy": res.witness_energy,
            "pigeonhole_holds": res.pigeonhole_holds}
    _emit(render(data, args.format), args.out)
    if not (res.holds and res.pigeonhole_holds):
        raise InternalInvariantViolation("ratio energy bound failed")
    return 0


def cmd_lemma(args) -> int:
    X = _load(args.file, args)
    rhs = [_load(path, args, "--rhs") for path in args.rhs]
    if any(B.field != X.field for B in rhs):
        raise UsageError("--rhs", "all sets must live in the same field")
    if not X:
        raise UsageError("--file", "X must be nonempty")
    info = {**_field_info(X.field), "lemma": args.which, "size_X": len(X)}
    if args.which in ("2.1", "2.2"):
        if args.copies < 1:
            raise UsageError("--copies", "must be >= 1")
        Bs = rhs or [X] * args.copies
        if args.which == "2.1":
            rep = plunnecke_check(X, Bs)
            data = {**info, "k": len(Bs), "lhs": rep.lhs, "rhs_num": rep.rhs_num,
                    "rhs_den": rep.rhs_den, "sum_holds": rep.sum_holds,
                    "diff_lhs": rep.diff_lhs, "diff_holds": rep.diff_holds, "holds": rep.holds}
            _emit(render(data, args.format), args.out)
            if not rep.holds:
                raise InternalInvariantViolation("Plunnecke-Ruzsa inequality failed")
            return 0
        if not 0 < args.eps < 1:
            raise UsageError("--eps", "must lie in (0, 1)")
        if args.exact and len(X) > 12:
            raise UsageError("--exact", "exact search needs |X| <= 12")
        res = katz_shen_search(X, Bs, args.eps, exact=args.exact)
        data = {**info, "k": len(Bs), "eps": args.eps, "method": res.method,
                "witness": res.witness, "witness_size": len(res.witness),
                "sumset_size": res.sumset_size, "rhs_num": res.rhs_num, "rhs_den": res.rhs_den,
                "c_measured": res.c_measured}
        _emit(render(data, args.format), args.out)
        return 0
    if args.which == "2.4":
        if not 0 <= args.eps < 1:
            raise UsageError("--eps", "must lie in [0, 1)")
        Y = rhs[0] if rhs else X
        if not Y:
            raise UsageError("--rhs", "Y must be nonempty")
        if args.exact and len(X) > 12:
            raise UsageError("--exact", "exact cover needs |X| <= 12")
        cov = (exact_cover if args.exact else greedy_cover)(X, Y, args.eps)
        data = {**info, "size_Y": len(Y), "eps": args.eps,
                "method": "exact" if args.exact else "greedy", "count": cov.count,
                "translates": cov.translates, "covered_fraction": cov.covered_fraction,
                "bound": cov.bound, "count_over_bound": cov.ratio}
        _emit(render(data, args.format), args.out)
        return 0
    # 3.2
    if not 0 <= args.eps <= 1:
        raise UsageError("--eps", "must lie in [0, 1]")
    if len(X) < 2:
        raise UsageError("--file", "profile needs |A| >= 2")
    prof = lemma32_cover_profile(X, args.eps)
    data = {**info, "size_B": prof.size_b, "eps": prof.eps, "threshold": prof.threshold,
            "min_covered_fraction": prof.min_covered_fraction,
            "y_star_size": len(prof.y_star), "x_star_size": len(prof.x_star),
            "y_ratio": prof.y_ratio, "x_ratio": prof.x_ratio,
            "y_star_own_size": len(prof.y_star_own), "x_star_own_size": len(prof.x_star_own),
            "max_count_b": max(r.count for r in prof.rows if r.kind == "b"),
            "max_count_a": max(r.count for r in prof.rows if r.kind == "a")}
    _emit(render(data, args.format), args.out)
    if args.csv:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["kind", "element", "set_size", "count", "covered_fraction", "own_threshold"])
        for r in prof.rows:
            w.writerow([r.kind, r.element, r.set_size, r.count, str(r.covered_fraction),
                        r.own_threshold])
        Path(args.csv).write_text(buf.getvalue())
    return 0


def _record_dict(rec) -> dict:
    d = rec.to_dict()
    d["size_maxpair"] = rec.size_maxpair
    d["cs_holds"] = rec.cs_holds
    return d


def cmd_measure(args) -> int:
    A = _load(args.file, args)
    if not A:
        raise UsageError("--file", "set must be nonempty")
    rec = measure(A, model="file", normalize=args.normalize)
    if args.format == "csv":
        _emit(records_to_csv([rec]), args.out)
    else:
        _emit(render(_record_dict(rec), args.format), args.out)
    if not rec.cs_holds or rec.chain_ok is False:
        raise InternalInvariantViolation("growth-record invariant failed")
    return 0


def cmd_sweep(args) -> int:
    F = _field_from_flags(args)
    try:
        ns = parse_n_range(args.n)
    except ValueError as exc:
        raise UsageError("--n", str(exc)) from None
    if args.trials < 1:
        raise UsageError("--trials", "must be >= 1")
    bad = [n for n in ns if not 1 <= n <= F.q]
    if bad:
        raise UsageError("--n", f"sizes must lie in [1, {F.q}], got {bad}")
    kwargs = {}
    if args.subfield_degree is not None:
        if args.subfield_degree < 1 or F.k % args.subfield_degree:
            raise UsageError("--subfield-degree", f"must divide k = {F.k}")
        kwargs["subfield_degree"] = args.subfield_degree
    if args.dilation is not None:
        if not 1 <= args.dilation < F.q:
            raise UsageError("--dilation", f"must lie in [1, {F.q})")
        kwargs["dilation"] = args.dilation
    try:
        result = sweep(args.model, F, ns, args.trials, args.seed, **kwargs)
    except FFGrowthError as exc:
        raise UsageError("--model", str(exc)) from None
    table = result.to_csv()
    if args.out:
        Path(args.out).write_text(table)
    elif args.format == "csv":
        sys.stdout.write(table)
        return _sweep_status(result)
    summary = {**_field_info(F), "model": args.model, "seed": args.seed, "trials": args.trials,
               "records": len(result.records),
               "bounds": [{"bound": t.name, "passed": t.passed, "total": t.total,
                           "fraction": t.fraction, "hypothesis": t.hypothesis,
                           "passed_hyp": t.passed_hyp, "total_hyp": t.total_hyp,
                           "fraction_hyp": t.fraction_hyp} for t in result.tallies]}
    sys.stdout.write(render(summary, "json" if args.format == "json" else "text"))
    return _sweep_status(result)


def _sweep_status(result) -> int:
    if any(not r.cs_holds or r.chain_ok is False for r in result.records):
        raise InternalInvariantViolation("a sweep record violated an exact inequality")
    return 0


def cmd_search(args) -> int:
    F = _field_from_flags(args)
    if not 2 <= args.n <= F.q:
        raise UsageError("--n", f"must lie in [2, {F.q}]")
    if args.iters < 1:
        raise UsageError("--iters", "must be >= 1")
    start = None
    if args.start:
        start = _load(args.start, args, "--start")
        if start.field != F:
            raise UsageError("--start", "start set lives in a different field")
        if len(start) != args.n:
            raise UsageError("--start", f"start set has {len(start)} elements, --n is {args.n}")
    try:
        st = extremal_search(F, args.n, args.iters, args.seed, args.objective,
                             args.hypothesis, start)
    except FFGrowthError as exc:
        raise UsageError("--hypothesis", str(exc)) from None
    data = {**_field_info(F), "objective": st.objective, "hypothesis": st.hypothesis,
            "seed": st.seed, "n": args.n, "iterations": st.iterations,
            "accepted": st.accepted, "rejected_hypothesis": st.rejected_hypothesis,
            "start_value": st.start_value, "best_value": st.best_value,
            "best_excluded_value": st.best_excluded_value, "best": st.best,
            "record": _record_dict(st.best_record)}
    if args.format == "csv":
        _emit(records_to_csv([st.best_record]), args.out)
    else:
        _emit(render(data, args.format), args.out)
    return 0


COMMANDS = {
    "field": cmd_field, "setop": cmd_setop, "classify": cmd_classify,
    "hypothesis": cmd_hypothesis, "energy": cmd_energy, "ratio-sum": cmd_ratio_sum,
    "lemma": cmd_lemma, "measure": cmd_measure, "sweep": cmd_sweep, "search": cmd_search,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"ffgrowth {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except InternalInvariantViolation as exc:
        print(f"ffgrowth {args.command}: invariant violated: {exc}", file=sys.stderr)
        return 1
    except FFGrowthError as exc:
        print(f"ffgrowth {args.command}: error: {exc}", file=sys.stderr)
        return 2


def entry() -> None:
    sys.exit(main())
