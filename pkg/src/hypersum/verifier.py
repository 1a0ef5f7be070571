"""Structured identity checking: comparators, theorem verification, the
nonterminating counterexample, grid sweeps, and an independent exact oracle.

Everything here reports through IdentityReport rather than raising, so that
random parameter sweeps near poles degrade to PoleSkipped entries instead of
aborting, and a Mismatch always means the identity under test actually failed
at the stated tolerances.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum, unique
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence

from .numeric_core import (
    DEFAULT_CONTEXT,
    ConvergenceError,
    DivergentSeriesError,
    EvalContext,
    IdentityAssertionError,
    IndeterminateError,
    InvalidParametersError,
    PoleError,
    Scalar,
    SphereValue,
    UnsupportedExactError,
    gamma,
    gamma_ratio,
    scalar,
)
from .hyper_series import HypParams, eval_at_1
from .ramanujan_sum import RamanujanParams, recast_params, s_closed_form, s_direct

__all__ = [
    "Verdict",
    "IdentityReport",
    "DEFAULT_REL_TOL",
    "compare",
    "verify_theorem",
    "verify_point",
    "counterexample_eq9",
    "sweep",
    "summarize",
    "brute_force_oracle",
]

# composed multi-gamma expressions accumulate error beyond the ~1e-13 of a
# single gamma evaluation; reports record the tolerance actually used
DEFAULT_REL_TOL = 1e-9


@unique
class Verdict(Enum):
    EXACT_MATCH = "ExactMatch"
    WITHIN_TOLERANCE = "WithinTolerance"
    MISMATCH = "Mismatch"
    POLE_SKIPPED = "PoleSkipped"


@dataclass(frozen=True, eq=False)
class IdentityReport:
    """Outcome of one lhs-vs-rhs comparison.

    abs_diff and rel_diff are the int 0 (exact zero) for ExactMatch, floats
    otherwise.  lhs or rhs is None when the corresponding evaluation never
    produced a value (PoleSkipped).  context carries the parameter record,
    the tolerances used, and any error message.
    """

    lhs: Optional[SphereValue]
    rhs: Optional[SphereValue]
    abs_diff: object
    rel_diff: object
    verdict: Verdict
    context: dict = field(default_factory=dict)


def compare(lhs: SphereValue, rhs: SphereValue,
            ctx: Optional[EvalContext] = None,
            rel_tol: float = DEFAULT_REL_TOL,
            context: Optional[dict] = None) -> IdentityReport:
    """Compare two sphere values; ExactMatch is reserved for literal equality
    of exact values (or two infinities), everything else is judged
    numerically at ctx precision against rel_tol / ctx.abs_tol."""
    ctx = ctx or DEFAULT_CONTEXT
    context = dict(context or {})
    context.setdefault("rel_tol", rel_tol)
    context.setdefault("abs_tol", ctx.abs_tol)
    if lhs.is_infinity or rhs.is_infinity:
        if lhs.is_infinity and rhs.is_infinity:
            return IdentityReport(lhs, rhs, 0, 0, Verdict.EXACT_MATCH, context)
        return IdentityReport(lhs, rhs, math.inf, math.inf,
                              Verdict.MISMATCH, context)
    a, b = lhs.finite, rhs.finite
    if a.is_exact and b.is_exact and a == b:
        return IdentityReport(lhs, rhs, 0, 0, Verdict.EXACT_MATCH, context)
    av = a.to_mpc(ctx.precision)
    bv = b.to_mpc(ctx.precision)
    abs_diff = float(abs(av - bv))
    scale = max(abs(av), abs(bv))
    rel_diff = float(abs(av - bv) / scale) if scale > 0 else 0.0
    if rel_diff <= rel_tol or abs_diff <= ctx.abs_tol:
        return IdentityReport(lhs, rhs, abs_diff, rel_diff,
                              Verdict.WITHIN_TOLERANCE, context)
    return IdentityReport(lhs, rhs, abs_diff, rel_diff,
                          Verdict.MISMATCH, context)


_SKIPPABLE = (PoleError, IndeterminateError, ConvergenceError,
              DivergentSeriesError, InvalidParametersError,
              UnsupportedExactError)


def verify_point(alpha, beta, m, z,
                 ctx: Optional[EvalContext] = None,
                 rel_tol: float = DEFAULT_REL_TOL) -> IdentityReport:
    """Compare the series value S(alpha, beta, m, z) with the claimed closed
    form Gamma(beta+1-m)/Gamma(alpha+beta+1-m).  Evaluation failures (poles,
    refusal to sum, budget exhaustion) yield PoleSkipped, never an exception."""
    ctx = ctx or DEFAULT_CONTEXT
    p = RamanujanParams(alpha, beta, m, z)
    context = {"alpha": str(p.alpha), "beta": str(p.beta),
               "m": str(p.m), "z": str(p.z)}
    lhs = rhs = None
    try:
        lhs = s_direct(p, ctx).value
        rhs = s_closed_form(p, ctx)
    except _SKIPPABLE as exc:
        context["error"] = f"{type(exc).__name__}: {exc}"
        return IdentityReport(lhs, rhs, math.nan, math.nan,
                              Verdict.POLE_SKIPPED, context)
    return compare(lhs, rhs, ctx, rel_tol, context)


def verify_theorem(k: int, beta, m, z,
                   ctx: Optional[EvalContext] = None,
                   rel_tol: float = DEFAULT_REL_TOL) -> IdentityReport:
    """The terminating summation: S(-k, beta, m, z) against (beta+1-m-k)_k."""
    if k < 0:
        raise InvalidParametersError("k must be a nonnegative integer")
    return verify_point(-k, beta, m, z, ctx, rel_tol)


def counterexample_eq9(alpha, beta,
                       ctx: Optional[EvalContext] = None,
                       rel_tol: float = DEFAULT_REL_TOL,
                       route_tol: float = 1e-8) -> IdentityReport:
    """S(1) with m = alpha+beta+1, where the closed form breaks down.

    S(1) is computed three independent ways: the recast 4F3 route, the
    2F1 reduction Gamma(beta+1)/Gamma(m) * 2F1(beta+1, alpha; m+1; 1) that
    the constraint m = alpha+beta+1 produces, and the fully reduced
    expression m/((m-alpha)*Gamma(alpha+1)).  The three must agree within
    route_tol (else IdentityAssertionError); the report then compares S(1)
    against the closed form, which is 0 here, so the expected verdict is
    Mismatch for non-integer alpha.  Nonpositive integer alpha makes both
    sides vanish and the verdict is a match instead.
    """
    ctx = ctx or DEFAULT_CONTEXT
    alpha, beta = scalar(alpha), scalar(beta)
    m = alpha + beta + 1
    p = RamanujanParams(alpha, beta, m, 1)

    params, pref = recast_params(alpha, beta, m, 1, ctx)
    route_a = pref * eval_at_1(params, ctx).value

    route_b = _counterexample_2f1(alpha, beta, m, ctx)
    route_c = _counterexample_reduced(alpha, m, ctx)

    routes = (route_a, route_b, route_c)
    if any(v.is_infinity for v in routes):
        if not all(v.is_infinity for v in routes):
            raise IdentityAssertionError(
                f"S(1) routes disagree on finiteness: {routes}")
    else:
        vals = [v.finite.to_mpc(ctx.precision) for v in routes]
        span = max(abs(x - y) for x in vals for y in vals)
        scale = max(abs(x) for x in vals)
        if span > max(route_tol * scale, ctx.abs_tol):
            raise IdentityAssertionError(
                f"S(1) routes disagree beyond {route_tol} relative: {vals}")

    closed = s_closed_form(p, ctx)
    context = {
        "alpha": str(alpha), "beta": str(beta), "m": str(m), "z": "1",
        "route_4f3": _value_str(route_a, ctx),
        "route_2f1": _value_str(route_b, ctx),
        "route_reduced": _value_str(route_c, ctx),
        "route_tol": route_tol,
    }
    return compare(route_a, closed, ctx, rel_tol, context)


def _counterexample_2f1(alpha: Scalar, beta: Scalar, m: Scalar,
                        ctx: EvalContext) -> SphereValue:
    # Gamma(beta+1)/Gamma(m) * 2F1(beta+1, alpha; m+1; 1); the constraint
    # m = alpha+beta+1 collapsed the Gamma(m+2j) pair termwise.
    x, y = beta + 1, m
    if x.is_exact and y.is_exact:
        try:
            pref = gamma_ratio(x, y)
        except UnsupportedExactError:
            pref = gamma_ratio(ctx.float_scalar(x), ctx.float_scalar(y))
    else:
        pref = gamma_ratio(ctx.float_scalar(x), ctx.float_scalar(y))
    series = eval_at_1(HypParams((beta + 1, alpha), (m + 1,)), ctx)
    return pref * series.value


def _counterexample_reduced(alpha: Scalar, m: Scalar,
                            ctx: EvalContext) -> SphereValue:
    # m / ((m - alpha) * Gamma(alpha+1))
    try:
        g = gamma(alpha + 1)
    except UnsupportedExactError:
        g = gamma(ctx.float_scalar(alpha + 1))
    num = SphereValue.of(m)
    den = SphereValue.of(m - alpha) * g
    return num * den.reciprocal()


def _value_str(v: SphereValue, ctx: EvalContext) -> str:
    if v.is_infinity:
        return "inf"
    return str(v.finite.to_mpc(min(ctx.precision, 64)))


def sweep(points: Iterable[Mapping], ctx: Optional[EvalContext] = None,
          jobs: Optional[int] = None,
          rel_tol: float = DEFAULT_REL_TOL) -> List[IdentityReport]:
    """verify_point over a grid.  Each point is a mapping with keys
    alpha (or k, meaning alpha = -k), beta, m, z.  Per-point failures of any
    kind are recorded as PoleSkipped reports; the sweep itself never aborts.
    Output order follows grid order regardless of completion order."""
    ctx = ctx or DEFAULT_CONTEXT
    pts = list(points)

    def run(indexed) -> IdentityReport:
        i, pt = indexed
        try:
            alpha = -pt["k"] if "k" in pt else pt["alpha"]
            rep = verify_point(alpha, pt["beta"], pt["m"], pt.get("z", 0),
                               ctx, rel_tol)
        except Exception as exc:  # malformed point: record, keep sweeping
            rep = IdentityReport(None, None, math.nan, math.nan,
                                 Verdict.POLE_SKIPPED,
                                 {"error": f"{type(exc).__name__}: {exc}",
                                  "point": dict(pt)})
        rep.context.setdefault("grid_index", i)
        return rep

    if jobs and jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(run, enumerate(pts)))
    return [run(ip) for ip in enumerate(pts)]


def summarize(reports: Sequence[IdentityReport]) -> Dict[str, int]:
    """Verdict counts, with all four verdicts always present as keys."""
    counts = {v.value: 0 for v in Verdict}
    for rep in reports:
        counts[rep.verdict.value] += 1
    return counts


def brute_force_oracle(k: int, beta, m, z) -> Scalar:
    """The defining series of S for alpha = -k, evaluated with nothing but
    plain Fraction arithmetic: each gamma ratio Gamma(x)/Gamma(x+n) is
    reduced on the spot to a rising-factorial product (1/(x)_n for n >= 0,
    (x+n)_{-n} for n < 0).  Shares no code with s_direct, so a defect in the
    main evaluation path cannot vouch for itself.

    All inputs must be exact rationals.  m = 0 is a genuine pole of the raw
    series shape (the j = 0 term carries Gamma(m)/Gamma(m+1) = 1/m) and
    raises PoleError rather than being resolved by cancellation.
    """
    if k < 0 or k != int(k):
        raise InvalidParametersError("k must be a nonnegative integer")
    vals = []
    for name, v in (("beta", beta), ("m", m), ("z", z)):
        s = scalar(v)
        if not s.is_rational:
            raise InvalidParametersError(
                f"brute_force_oracle needs exact rational {name}, got {s}")
        vals.append(s.fraction)
    b, mf, zf = vals

    def rising(x: Fraction, n: int) -> Fraction:
        acc = Fraction(1)
        for i in range(n):
            acc *= x + i
        return acc

    def ratio(x: Fraction, n: int, j: int) -> Fraction:
        # Gamma(x) / Gamma(x + n)
        if n >= 0:
            den = rising(x, n)
            if den == 0:
                raise PoleError(
                    f"gamma ratio pole in term {j} of the brute-force series",
                    term_index=j)
            return 1 / den
        return rising(x + n, -n)

    total = Fraction(0)
    binom = Fraction(1)            # (-k)_j / j!  =  (-1)^j C(k, j)
    for j in range(k + 1):
        if j > 0:
            binom *= Fraction(-(k - j + 1), j)
        pair1 = ratio(b + 1 + j * zf, j - k, j)
        pair2 = ratio(mf + j * (zf + 1), 1 - j, j)
        total += mf * pair1 * pair2 * binom
    return Scalar.exact(total)
