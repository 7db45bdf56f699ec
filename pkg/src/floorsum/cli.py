"""Command-line interface.

Subcommands: sum, error-scan, constant, vaaler-check, vaughan-check,
expsum-check, lemma21-check, exponent. Data goes to --output (default
stdout) as CSV or JSON; progress and summaries go to stderr. Exit codes:
0 success/pass, 1 a numeric check failed, 2 invalid arguments. Runs that
draw random numbers require --seed and are bit-reproducible given it.
"""

import argparse
import csv
import json
import math
import sys
from fractions import Fraction
from typing import List, Optional

from . import constant as constant_mod
from . import engine, expsum, vaaler, vaughan
from .arith import format_rational, parse_rational
from .exponents import (
    ConditionViolated,
    ExponentPair,
    bordelles_exponent,
    dominance_window,
    optimize_split,
    prop41_bound,
    window_edge,
)

_EXIT_OK = 0
_EXIT_CHECK_FAILED = 1
_EXIT_BAD_ARGS = 2


def _log(msg: str) -> None:
    print(msg, file=sys.stderr)


def _open_output(path: Optional[str]):
    if path in (None, "-"):
        return sys.stdout, False
    return open(path, "w", encoding="utf-8", newline=""), True


def _emit_json(payload: dict, path: Optional[str]) -> None:
    stream, owned = _open_output(path)
    try:
        stream.write(json.dumps(payload, sort_keys=True) + "\n")
    finally:
        if owned:
            stream.close()


def _emit_csv(header, rows, path: Optional[str]) -> None:
    stream, owned = _open_output(path)
    try:
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
    finally:
        if owned:
            stream.close()


def _parse_pair(text: str) -> ExponentPair:
    parts = text.split(",")
    if len(parts) != 2:
        raise ValueError(f"expected 'kappa,lambda', got {text!r}")
    return ExponentPair(parse_rational(parts[0]), parse_rational(parts[1]))


def _rational_json(q: Fraction) -> dict:
    return {"rational": format_rational(q), "decimal": round(float(q), 6)}


def _term_json(term) -> dict:
    return {
        "x_exponent": format_rational(term.a),
        "d_exponent": format_rational(term.b),
        "x_decimal": round(float(term.a), 6),
        "d_decimal": round(float(term.b), 6),
    }


# ----------------------------------------------------------------- sum


def _cmd_sum(args) -> int:
    x = args.x
    blocks = engine.s_lambda_blocks(x)
    direct = None
    agree = True
    rel = None
    if x <= args.direct_limit:
        from .arith import sieve_mangoldt

        direct = engine.s_lambda_direct(x, sieve_mangoldt(x))
        scale = max(abs(direct), abs(blocks), 1e-300)
        rel = abs(direct - blocks) / scale
        agree = rel <= 1e-9
    payload = {
        "command": "sum",
        "parameters": {"x": x},
        "results": {
            "blocks": blocks,
            "direct": direct,
            "relative_difference": rel,
            "agree": agree,
        },
    }
    _emit_json(payload, args.output)
    return _EXIT_OK if agree else _EXIT_CHECK_FAILED


# ----------------------------------------------------------- error-scan


def _cmd_error_scan(args) -> int:
    grid = engine.geometric_grid(args.x_min, args.x_max, args.points)
    enclosure = constant_mod.constant_enclosure(args.depth)
    result = engine.error_scan(grid, enclosure, threads=args.threads)
    rows = [s.csv_row() for s in result.samples]
    _emit_csv(engine.ERROR_SCAN_CSV_HEADER, rows, args.output)
    _log(
        f"error-scan: {len(rows)} samples, slope={result.slope}, "
        f"c_mid={result.c_mid!r}, c_width={result.c_width:.3e}, "
        f"band_max={result.band_max:.3e}"
    )
    return _EXIT_OK


# -------------------------------------------------------------- constant


def _cmd_constant(args) -> int:
    enc = constant_mod.constant_enclosure(args.depth)
    payload = {
        "command": "constant",
        "parameters": {"depth": args.depth},
        "results": {
            "lo": enc.lo,
            "hi": enc.hi,
            "width": enc.width,
            "lo_hex": enc.lo.hex(),
            "hi_hex": enc.hi.hex(),
            "width_hex": enc.width.hex(),
            "depth": enc.depth,
            "tail_bound": constant_mod.tail_bound(args.depth),
            "tail_bound_used": enc.tail_bound_used,
        },
    }
    _emit_json(payload, args.output)
    return _EXIT_OK


# ---------------------------------------------------------- vaaler-check


def _cmd_vaaler_check(args) -> int:
    res = vaaler.vaaler_check(args.H, args.samples, args.seed)
    payload = {
        "command": "vaaler-check",
        "parameters": {"H": args.H, "samples": args.samples, "seed": args.seed},
        "results": {
            "max_abs_error": res.max_abs_error,
            "max_slack": res.max_slack,
            "min_slack": res.min_slack,
            "violations": res.violations,
            "passed": res.passed,
        },
    }
    _emit_json(payload, args.output)
    return _EXIT_OK if res.passed else _EXIT_CHECK_FAILED


# --------------------------------------------------------- vaughan-check


def _cmd_vaughan_check(args) -> int:
    res = vaughan.vaughan_check(args.D, args.trials, args.seed)
    payload = {
        "command": "vaughan-check",
        "parameters": {"D": args.D, "trials": args.trials, "seed": args.seed},
        "results": {
            "exact_failures": res.exact_failures,
            "max_coefficient_ratio": res.max_coefficient_ratio,
            "passed": res.passed,
        },
    }
    _emit_json(payload, args.output)
    return _EXIT_OK if res.passed else _EXIT_CHECK_FAILED


# ---------------------------------------------------------- expsum-check


def _int_list(text: str) -> List[int]:
    return [int(t) for t in text.split(",") if t.strip()]


def _float_list(text: str) -> List[float]:
    return [float(t) for t in text.split(",") if t.strip()]


def _cmd_expsum_check(args) -> int:
    pair = _parse_pair(args.pair) if args.pair else None
    instances = []
    for h in args.sizes:
        for m in args.sizes:
            for n in args.sizes:
                for x in args.x_list:
                    for d in args.deltas:
                        for s in range(args.seeds):
                            instances.append(
                                expsum.ExpSumInstance(
                                    X=x, H=h, M=m, N=n, delta=d,
                                    coefficient_seed=args.seed + s,
                                )
                            )
    report = expsum.bound_ratio_scan(instances, pair=pair)
    header = [
        "H", "M", "N", "X", "delta", "coefficient_seed",
        "abs_value", "bound1", "ratio1", "bound2", "ratio2",
    ]
    rows = []
    worst = 0.0
    for row in report.rows:
        inst = row.instance
        rows.append(
            (
                inst.H, inst.M, inst.N, repr(inst.X), repr(inst.delta),
                inst.coefficient_seed, repr(row.abs_value), repr(row.bound1),
                repr(row.ratio1),
                repr(row.bound2) if row.bound2 is not None else "",
                repr(row.ratio2) if row.ratio2 is not None else "",
            )
        )
        worst = max(worst, row.ratio1)
    _emit_csv(header, rows, args.output)
    _log(
        f"expsum-check: {len(rows)} feasible instances ({report.excluded} excluded), "
        f"max ratio1={report.max_ratio1:.6f}, median ratio1={report.median_ratio1:.6f}"
    )
    return _EXIT_OK if worst <= args.ratio_cap else _EXIT_CHECK_FAILED


# --------------------------------------------------------- lemma21-check


def _cmd_lemma21_check(args) -> int:
    pairs = []
    for chunk in args.pairs.split(";"):
        a, b = chunk.split(",")
        pairs.append((float(Fraction(a)), float(Fraction(b))))
    sizes = args.sizes
    header = ["alpha", "beta", "M", "N", "Delta", "count", "denominator", "ratio", "degenerate"]
    rows = []
    ok = True
    for alpha, beta in pairs:
        per_size_max = {}
        for size in sizes:
            mn = size * size
            deltas = [0.0, 1.0 / mn, 1.0 / math.sqrt(mn), 1.0]
            best = 0.0
            for d in deltas:
                q = expsum.ProximityQuery(alpha=alpha, beta=beta, M=size, N=size, Delta=d)
                res = expsum.count_proximity_detailed(q)
                den = expsum.lemma21_denominator(q)
                ratio = res.count / den
                best = max(best, ratio)
                rows.append(
                    (
                        repr(alpha), repr(beta), size, size, repr(d),
                        res.count, repr(den), repr(ratio), res.degenerate,
                    )
                )
            per_size_max[size] = best
        if per_size_max[max(sizes)] > args.growth_cap * per_size_max[min(sizes)]:
            ok = False
    _emit_csv(header, rows, args.output)
    return _EXIT_OK if ok else _EXIT_CHECK_FAILED


# ------------------------------------------------------------- exponent


def _cmd_exponent(args) -> int:
    pair = _parse_pair(args.pair)
    pair2 = _parse_pair(args.pair2) if args.pair2 else pair
    params = {
        "pair": str(pair),
        "pair2": str(pair2) if args.pair2 else None,
        "report": args.report,
    }
    if args.report == "bordelles":
        try:
            value = bordelles_exponent(pair)
        except ConditionViolated as exc:
            _emit_json(
                {
                    "command": "exponent",
                    "parameters": params,
                    "results": {"error": str(exc), "predicate": exc.predicate},
                },
                args.output,
            )
            return _EXIT_BAD_ARGS
        results = {"exponent": _rational_json(value)}
    elif args.report == "prop41":
        expr = prop41_bound(pair, pair2)
        results = {"terms": [_term_json(t) for t in expr.terms]}
    elif args.report == "optimize":
        expr = prop41_bound(pair, pair2)
        leader = expr.terms[0]
        split = optimize_split(leader)
        results = {
            "leading_term": _term_json(leader),
            "nu": _rational_json(split.nu),
            "theta": _rational_json(split.theta),
        }
    else:  # window
        expr = prop41_bound(pair, pair2)
        t1, t3 = expr.terms[0], expr.terms[2]
        edge = window_edge(t1, t3)
        cert = dominance_window(expr, t1, edge, Fraction(2, 3))
        results = {
            "edge_terms_1_3": _rational_json(edge),
            "window": [format_rational(edge), "2/3"],
            "leader_dominates": cert.holds,
        }
    _emit_json(
        {"command": "exponent", "parameters": params, "results": results},
        args.output,
    )
    return _EXIT_OK


# ----------------------------------------------------------------- main


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="floorsum",
        description="Floor-quotient von Mangoldt sums and companion checks",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sum", help="evaluate the floor-quotient sum at one x")
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--direct-limit", type=int, default=10**7,
                   help="largest x for which the direct O(x) method also runs")
    p.add_argument("--output", default=None)
    p.set_defaults(func=_cmd_sum)

    p = sub.add_parser("error-scan", help="scan S(x) - c*x over a geometric grid")
    p.add_argument("--x-min", type=int, required=True)
    p.add_argument("--x-max", type=int, required=True)
    p.add_argument("--points", type=int, required=True)
    p.add_argument("--depth", type=int, required=True,
                   help="truncation depth for the constant enclosure")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--output", default=None)
    p.set_defaults(func=_cmd_error_scan)

    p = sub.add_parser("constant", help="certified enclosure of the constant c")
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--output", default=None)
    p.set_defaults(func=_cmd_constant)

    p = sub.add_parser("vaaler-check", help="sawtooth approximation error bound check")
    p.add_argument("--H", type=int, required=True)
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--output", default=None)
    p.set_defaults(func=_cmd_vaaler_check)

    p = sub.add_parser("vaughan-check", help="exact decomposition identity check")
    p.add_argument("--D", type=int, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--output", default=None)
    p.set_defaults(func=_cmd_vaughan_check)

    p = sub.add_parser("expsum-check", help="triple exponential sum vs bound formulas")
    p.add_argument("--sizes", type=_int_list, default=[4, 8, 16])
    p.add_argument("--x-list", type=_float_list, default=[10.0, 100.0, 1000.0])
    p.add_argument("--deltas", type=_float_list, default=[0.0, 1.0])
    p.add_argument("--seeds", type=int, default=10, help="seeds per grid point")
    p.add_argument("--seed", type=int, required=True, help="base coefficient seed")
    p.add_argument("--pair", default=None, help="exponent pair for the variant-2 bound")
    p.add_argument("--ratio-cap", type=float, default=10.0)
    p.add_argument("--output", default=None)
    p.set_defaults(func=_cmd_expsum_check)

    p = sub.add_parser("lemma21-check", help="proximity count vs MNlog(2MN)+Delta(MN)^2")
    p.add_argument("--pairs", default="1,1;1/2,1;3/2,1/2",
                   help="semicolon-separated alpha,beta pairs (rationals ok)")
    p.add_argument("--sizes", type=_int_list, default=[8, 16, 32])
    p.add_argument("--growth-cap", type=float, default=4.0)
    p.add_argument("--output", default=None)
    p.set_defaults(func=_cmd_lemma21_check)

    p = sub.add_parser("exponent", help="exact exponent-pair calculus reports")
    p.add_argument("--pair", required=True, help="kappa,lambda as exact rationals")
    p.add_argument("--pair2", default=None)
    p.add_argument("--report", required=True,
                   choices=["bordelles", "prop41", "optimize", "window"])
    p.add_argument("--output", default=None)
    p.set_defaults(func=_cmd_exponent)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        _log(f"error: {exc}")
        return _EXIT_BAD_ARGS


if __name__ == "__main__":
    sys.exit(main())
