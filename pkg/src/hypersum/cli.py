"""Command-line surface: evaluate series, verify identities, run sweeps.

Exit codes: 0 success (or an expected verdict), 1 usage error, 2 divergence
or refusal to sum, 3 pole, 4 a verification produced an unexpected verdict.

Parameters are written as rational strings ("-3/2", "0.25") or decimals; in
exact mode decimals are parsed as exact rationals (scaled powers of ten) so
that verification is never poisoned by binary-decimal conversion, in float
mode they become floats (complex accepted, e.g. "1+1j").  Grid files for
`sweep` are JSON; see GRID_SCHEMA.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import time
from fractions import Fraction
from itertools import product
from typing import List, Optional

from mpmath import mp

from .numeric_core import (
    DEFAULT_CONTEXT,
    ConvergenceError,
    DivergentSeriesError,
    EvalContext,
    IndeterminateError,
    InvalidParametersError,
    PoleError,
    Scalar,
    SphereValue,
    UnsupportedExactError,
)
from .hyper_series import EvalResult, HypParams, eval_at_1
from .classical_identities import askey_ismail_lhs, askey_ismail_rhs
from .ramanujan_sum import (
    RamanujanParams,
    finite_difference_check,
    inner_sum_E,
    s_direct,
)
from .verifier import (
    IdentityReport,
    Verdict,
    compare,
    counterexample_eq9,
    summarize,
    sweep,
    verify_theorem,
)

__all__ = ["main", "OUTPUT_SCHEMA", "GRID_SCHEMA"]

ENV_PRECISION = "HYPERSUM_PRECISION"

# every JSON record printed by the CLI validates against this
OUTPUT_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "type": "object",
    "required": ["command", "params", "timing_s"],
    "properties": {
        "command": {"type": "string"},
        "params": {"type": "object"},
        "timing_s": {"type": "number", "minimum": 0},
        "result": {
            "type": "object",
            "required": ["decimal"],
            "properties": {
                "decimal": {"type": "string"},
                "exact": {"type": "string"},
                "terms_used": {"type": "integer"},
                "tail_bound": {"type": ["number", "integer"]},
                "classification": {"type": "string"},
                "experimental": {"type": "boolean"},
            },
        },
        "verdict": {
            "enum": ["ExactMatch", "WithinTolerance", "Mismatch", "PoleSkipped"],
        },
        "report": {"type": "object"},
        "summary": {"type": "object"},
        "csv": {"type": "string"},
        "error": {"type": "string"},
    },
}

# accepted grid-file layout for `hypersum sweep`
GRID_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "type": "object",
    "properties": {
        "points": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {
                    "k": {"type": ["integer", "string"]},
                    "alpha": {"type": ["number", "string"]},
                    "beta": {"type": ["number", "string"]},
                    "m": {"type": ["number", "string"]},
                    "z": {"type": ["number", "string"]},
                },
            },
        },
        "product": {
            "type": "object",
            "description": "lists per parameter name; the grid is their "
                           "cartesian product",
        },
    },
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with code 2 on bad usage; the contract here says 1
    def error(self, message):
        raise UsageError(message)


def _parse_scalar(text: str, mode: str, flag: str):
    text = text.strip()
    if mode == "exact":
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError):
            raise UsageError(
                f"argument {flag}: not an exact rational: {text!r}") from None
    try:
        return float(text)
    except ValueError:
        pass
    try:
        return complex(text)
    except ValueError:
        raise UsageError(
            f"argument {flag}: not a float or complex value: {text!r}") from None


def _parse_list(text: str, mode: str, flag: str) -> tuple:
    text = text.strip()
    if not text:
        return ()
    return tuple(_parse_scalar(part, mode, flag) for part in text.split(","))


def _context_from(args) -> EvalContext:
    precision = args.precision
    if precision is None:
        env = os.environ.get(ENV_PRECISION)
        precision = int(env) if env else DEFAULT_CONTEXT.precision
    return EvalContext(
        precision=precision,
        max_terms=args.max_terms or DEFAULT_CONTEXT.max_terms,
        rel_tol=args.rel_tol or DEFAULT_CONTEXT.rel_tol,
        abs_tol=args.abs_tol or DEFAULT_CONTEXT.abs_tol,
    )


def _decimal_str(s: Scalar, ctx: EvalContext) -> str:
    prec = s.prec if s.is_float else ctx.precision
    # stay a couple of digits inside what the binary precision represents,
    # otherwise the tail of the decimal is rounding noise
    digits = max(int(prec / 3.3219) - 2, 8)
    v = s.to_mpc(prec)
    if v.imag == 0:
        return mp.nstr(v.real, digits)
    return mp.nstr(v, digits)


def _value_record(v: SphereValue, ctx: EvalContext) -> dict:
    if v.is_infinity:
        return {"decimal": "inf", "exact": "inf"}
    rec = {"decimal": _decimal_str(v.finite, ctx)}
    if v.finite.is_exact:
        if v.finite.sqrtpi_power == 0:
            rec["exact"] = str(v.finite.fraction)
        else:
            rec["exact"] = (f"{v.finite.coefficient}"
                            f"*sqrtpi^{v.finite.sqrtpi_power}")
    return rec


def _report_record(rep: IdentityReport, ctx: EvalContext) -> dict:
    def side(v):
        return _value_record(v, ctx) if v is not None else None
    return {
        "lhs": side(rep.lhs),
        "rhs": side(rep.rhs),
        "abs_diff": rep.abs_diff if rep.abs_diff == rep.abs_diff else "nan",
        "rel_diff": rep.rel_diff if rep.rel_diff == rep.rel_diff else "nan",
        "context": {k: str(v) for k, v in rep.context.items()},
    }


def _emit(record: dict) -> None:
    print(json.dumps(record, indent=2, default=str))


def _eval_record(args, params: dict, res: EvalResult, ctx: EvalContext,
                 t0: float) -> dict:
    result = _value_record(res.value, ctx)
    result["terms_used"] = res.terms_used
    result["tail_bound"] = res.tail_bound
    result["classification"] = res.classification.kind.value
    result["experimental"] = res.experimental
    return {
        "command": args.command_echo,
        "params": params,
        "result": result,
        "timing_s": round(time.perf_counter() - t0, 6),
    }


def _cmd_eval_pfq(args) -> int:
    ctx = _context_from(args)
    t0 = time.perf_counter()
    nums = _parse_list(args.num or "", args.mode, "--num")
    dens = _parse_list(args.den or "", args.mode, "--den")
    res = eval_at_1(HypParams(nums, dens), ctx)
    _emit(_eval_record(args, {"num": args.num or "", "den": args.den or "",
                              "mode": args.mode, "precision": ctx.precision},
                       res, ctx, t0))
    return 0


def _cmd_eval_ramanujan(args) -> int:
    ctx = _context_from(args)
    t0 = time.perf_counter()
    vals = {}
    for flag in ("alpha", "beta", "m", "z"):
        raw = getattr(args, flag)
        if raw is None:
            raise UsageError(f"eval ramanujan requires --{flag}")
        vals[flag] = _parse_scalar(raw, args.mode, f"--{flag}")
    res = s_direct(RamanujanParams(**vals), ctx)
    params = {k: str(getattr(args, k)) for k in ("alpha", "beta", "m", "z")}
    params["mode"] = args.mode
    params["precision"] = ctx.precision
    _emit(_eval_record(args, params, res, ctx, t0))
    return 0


def _verdict_exit(verdict: Verdict, expect_mismatch: bool = False) -> int:
    if verdict is Verdict.POLE_SKIPPED:
        return 3
    ok = {Verdict.MISMATCH} if expect_mismatch \
        else {Verdict.EXACT_MATCH, Verdict.WITHIN_TOLERANCE}
    return 0 if verdict in ok else 4


def _cmd_verify(args) -> int:
    ctx = _context_from(args)
    t0 = time.perf_counter()
    rel_tol = args.rel_tol or 1e-9
    expect_mismatch = False
    identity = args.identity

    if identity == "theorem":
        for flag in ("k", "beta", "m", "z"):
            if getattr(args, flag) is None:
                raise UsageError(f"verify theorem requires --{flag}")
        rep = verify_theorem(
            args.k,
            _parse_scalar(args.beta, args.mode, "--beta"),
            _parse_scalar(args.m, args.mode, "--m"),
            _parse_scalar(args.z, args.mode, "--z"),
            ctx, rel_tol)
        params = {"k": args.k, "beta": args.beta, "m": args.m, "z": args.z}
    elif identity == "inner-sum":
        for flag in ("m", "n", "r"):
            if getattr(args, flag) is None:
                raise UsageError(f"verify inner-sum requires --{flag}")
        value = inner_sum_E(_parse_scalar(args.m, args.mode, "--m"),
                            args.n, args.r)
        expected = Scalar.exact(1 if args.r == 0 else 0)
        rep = compare(SphereValue.of(value), SphereValue.of(expected),
                      ctx, rel_tol, {"m": args.m, "n": args.n, "r": args.r})
        params = {"m": args.m, "n": args.n, "r": args.r}
    elif identity == "finite-diff":
        for flag in ("m", "n", "r"):
            if getattr(args, flag) is None:
                raise UsageError(f"verify finite-diff requires --{flag}")
        value = finite_difference_check(
            _parse_scalar(args.m, args.mode, "--m"), args.n, args.r)
        rep = compare(SphereValue.of(value), SphereValue.of(Scalar.exact(0)),
                      ctx, rel_tol, {"m": args.m, "n": args.n, "r": args.r})
        params = {"m": args.m, "n": args.n, "r": args.r}
    elif identity == "askey-ismail":
        # a, c ride on --num and d on --den (the flag set has no dedicated
        # names for them)
        if not args.num or not args.den or args.k is None:
            raise UsageError(
                "verify askey-ismail requires --num=a,c --den=d --k")
        ac = _parse_list(args.num, args.mode, "--num")
        d = _parse_list(args.den, args.mode, "--den")
        if len(ac) != 2 or len(d) != 1:
            raise UsageError(
                "verify askey-ismail expects exactly --num=a,c and --den=d")
        a, c = ac
        lhs = askey_ismail_lhs(a, c, d[0], args.k, ctx).value
        rhs = askey_ismail_rhs(a, c, d[0], args.k, ctx).value
        rep = compare(lhs, rhs, ctx, rel_tol,
                      {"a": str(a), "c": str(c), "d": str(d[0]), "k": args.k})
        params = {"num": args.num, "den": args.den, "k": args.k}
    elif identity == "counterexample":
        for flag in ("alpha", "beta"):
            if getattr(args, flag) is None:
                raise UsageError(f"verify counterexample requires --{flag}")
        rep = counterexample_eq9(
            _parse_scalar(args.alpha, args.mode, "--alpha"),
            _parse_scalar(args.beta, args.mode, "--beta"),
            ctx, rel_tol)
        params = {"alpha": args.alpha, "beta": args.beta}
        expect_mismatch = True
    else:  # pragma: no cover - argparse restricts choices
        raise UsageError(f"unknown identity {identity!r}")

    params["mode"] = args.mode
    _emit({
        "command": args.command_echo,
        "params": params,
        "verdict": rep.verdict.value,
        "report": _report_record(rep, ctx),
        "timing_s": round(time.perf_counter() - t0, 6),
    })
    return _verdict_exit(rep.verdict, expect_mismatch)


def _load_grid(path: str, mode: str) -> List[dict]:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read grid file {path}: {exc}") from None
    if not isinstance(doc, dict):
        raise UsageError("grid file must be a JSON object; see GRID_SCHEMA")

    def convert(v, flag):
        if isinstance(v, str):
            return _parse_scalar(v, mode, flag)
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            raise UsageError(f"grid value for {flag} must be a number or string")
        if isinstance(v, int):
            return v
        return v if mode == "float" else Fraction(str(v))

    points = []
    for pt in doc.get("points", []):
        points.append({key: (int(val) if key == "k" else convert(val, key))
                       for key, val in pt.items()})
    prod = doc.get("product")
    if prod:
        keys = sorted(prod)
        for combo in product(*(prod[key] for key in keys)):
            points.append({key: (int(val) if key == "k" else convert(val, key))
                           for key, val in zip(keys, combo)})
    return points


def _point_expectation(pt: dict, verdict: Verdict) -> bool:
    """True when the verdict is unsurprising for this grid point: matches
    for terminating alpha or z = 0, Mismatch otherwise (the closed form is
    expected to fail off those regimes); PoleSkipped is always neutral."""
    if verdict is Verdict.POLE_SKIPPED:
        return True
    alpha = -pt["k"] if "k" in pt else pt["alpha"]
    terminating = isinstance(alpha, int) and alpha <= 0
    if isinstance(alpha, Fraction) and alpha.denominator == 1 and alpha <= 0:
        terminating = True
    z = pt.get("z", 0)
    if terminating or z == 0:
        return verdict in (Verdict.EXACT_MATCH, Verdict.WITHIN_TOLERANCE)
    return verdict is Verdict.MISMATCH


def _cmd_sweep(args) -> int:
    ctx = _context_from(args)
    t0 = time.perf_counter()
    points = _load_grid(args.grid, args.mode)
    reports = sweep(points, ctx, jobs=args.jobs,
                    rel_tol=args.rel_tol or 1e-9)

    def cell(v):
        if v is None:
            return ""
        rec = _value_record(v, ctx)
        return rec.get("exact", rec["decimal"])

    with open(args.out, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["grid_index", "alpha", "beta", "m", "z",
                         "lhs", "rhs", "rel_diff", "verdict"])
        for i, (pt, rep) in enumerate(zip(points, reports)):
            alpha = -pt["k"] if "k" in pt else pt.get("alpha", "")
            writer.writerow([
                i, str(alpha), str(pt.get("beta", "")), str(pt.get("m", "")),
                str(pt.get("z", 0)), cell(rep.lhs), cell(rep.rhs),
                rep.rel_diff, rep.verdict.value,
            ])

    unexpected = sum(not _point_expectation(pt, rep.verdict)
                     for pt, rep in zip(points, reports))
    _emit({
        "command": args.command_echo,
        "params": {"grid": args.grid, "points": len(points),
                   "jobs": args.jobs or 1, "mode": args.mode},
        "summary": {**summarize(reports), "unexpected": unexpected},
        "csv": args.out,
        "timing_s": round(time.perf_counter() - t0, 6),
    })
    return 0 if unexpected == 0 else 4


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--mode", choices=("exact", "float"), default="exact",
                   help="parse parameters as exact rationals or floats")
    p.add_argument("--precision", type=int, default=None,
                   help=f"working precision in bits (default 256 or "
                        f"${ENV_PRECISION})")
    p.add_argument("--rel-tol", type=float, default=None, dest="rel_tol")
    p.add_argument("--abs-tol", type=float, default=None, dest="abs_tol")
    p.add_argument("--max-terms", type=int, default=None, dest="max_terms")


def _build_parser() -> _Parser:
    parser = _Parser(prog="hypersum",
                     description="Hypergeometric series at unit argument: "
                                 "evaluation and identity verification.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="evaluate a series")
    eval_sub = p_eval.add_subparsers(dest="series", required=True)

    p_pfq = eval_sub.add_parser("pfq", help="pFq at unit argument")
    p_pfq.add_argument("--num", help="comma-separated numerator parameters")
    p_pfq.add_argument("--den", help="comma-separated denominator parameters")
    _add_common(p_pfq)
    p_pfq.set_defaults(func=_cmd_eval_pfq, command_echo="eval pfq")

    p_ram = eval_sub.add_parser("ramanujan", help="the central sum S")
    for flag in ("--alpha", "--beta", "--m", "--z"):
        p_ram.add_argument(flag)
    _add_common(p_ram)
    p_ram.set_defaults(func=_cmd_eval_ramanujan, command_echo="eval ramanujan")

    p_verify = sub.add_parser("verify", help="check an identity")
    p_verify.add_argument(
        "identity",
        choices=("theorem", "inner-sum", "finite-diff", "askey-ismail",
                 "counterexample"))
    p_verify.add_argument("--k", type=int)
    p_verify.add_argument("--n", type=int)
    p_verify.add_argument("--r", type=int)
    for flag in ("--alpha", "--beta", "--m", "--z", "--num", "--den"):
        p_verify.add_argument(flag)
    _add_common(p_verify)
    p_verify.set_defaults(func=_cmd_verify, command_echo="verify")

    p_sweep = sub.add_parser("sweep", help="verify over a parameter grid")
    p_sweep.add_argument("--grid", required=True,
                         help="JSON grid file (see GRID_SCHEMA)")
    p_sweep.add_argument("--out", required=True, help="CSV output path")
    p_sweep.add_argument("--jobs", type=int, default=None)
    _add_common(p_sweep)
    p_sweep.set_defaults(func=_cmd_sweep, command_echo="sweep")

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"hypersum: error: {exc}", file=sys.stderr)
        return 1
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"hypersum: error: {exc}", file=sys.stderr)
        return 1
    except InvalidParametersError as exc:
        print(f"hypersum: invalid parameters: {exc}", file=sys.stderr)
        return 1
    except (DivergentSeriesError, ConvergenceError) as exc:
        _emit({"command": getattr(args, "command_echo", "?"),
               "params": {}, "error": str(exc), "timing_s": 0.0})
        return 2
    except (PoleError, IndeterminateError) as exc:
        _emit({"command": getattr(args, "command_echo", "?"),
               "params": {}, "error": str(exc), "timing_s": 0.0})
        return 3
    except UnsupportedExactError as exc:
        print(f"hypersum: error: {exc} (try --mode=float)", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
