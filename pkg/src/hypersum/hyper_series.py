"""Generalized pFq series at unit argument: classification, terms, summation.

The sum is over j >= 0 of (a_1)_j ... (a_p)_j / [(b_1)_j ... (b_q)_j j!].
Termination (a numerator parameter a nonpositive integer) takes priority over
everything else; otherwise the series converges at 1 only in the balanced
case p = q+1 with Re(sum of denominators) > Re(sum of numerators), or
trivially for p <= q.

Summation strategy by case:

* terminating: the finite sum, exact when all parameters are exact;
* p <= q: term ratios decay like a power of 1/j, so a geometric bound on
  the tail applies once the ratio is small and decreasing;
* p = q+1: the ratio tends to 1 from below and a geometric bound never
  certifies anything useful.  Instead the tail from index N is written as
  t_N * u(N) where u satisfies u(N) = 1 + r(N) u(N+1), and u is expanded in
  powers of 1/N.  The expansion coefficients come from a triangular linear
  system and do not depend on N, so the cutoff can be doubled cheaply until
  the correction is certified self-consistent.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional, Sequence, Union

from mpmath import mp

from .numeric_core import (
    DEFAULT_CONTEXT,
    ConvergenceError,
    DivergentSeriesError,
    EvalContext,
    InvalidParametersError,
    PoleError,
    Scalar,
    SphereValue,
    UnsupportedExactError,
    pochhammer,
    scalar,
    working_precision,
)

__all__ = [
    "HypParams",
    "SeriesKind",
    "SeriesClassification",
    "EvalResult",
    "classify",
    "term",
    "eval_at_1",
    "pfq",
]


class SeriesKind(enum.Enum):
    TERMINATING = "terminating"
    CONVERGENT = "convergent"
    DIVERGENT = "divergent"
    # Reserved for parameter sets that define no series at all.  The
    # constructor rejects those outright, so classify never returns it;
    # p > q+1 without termination is reported as DIVERGENT.
    UNDEFINED = "undefined"


@dataclass(frozen=True)
class SeriesClassification:
    kind: SeriesKind
    k: Optional[int] = None  # truncation index for TERMINATING
    saalschutzian: bool = False
    tolerance_dependent: bool = False


@dataclass(frozen=True)
class EvalResult:
    value: SphereValue
    terms_used: int
    # int 0 marks an exact terminating sum; floats carry the estimated
    # truncation error of an inexact evaluation.
    tail_bound: Union[int, float]
    classification: SeriesClassification
    experimental: bool = False


@dataclass(frozen=True, eq=False)
class HypParams:
    """Parameter lists of a pFq.  Scalars, ints, Fractions, "p/q" strings and
    floats are accepted; float entries are unified to one precision.

    A denominator parameter at a nonpositive integer -d is only legal when
    some numerator parameter is a nonpositive integer -k with k <= d: the
    series then truncates before the vanishing denominator factor is ever
    used.  Anything else leaves 0 in a denominator and is rejected.
    """

    numerator: tuple
    denominator: tuple

    def __post_init__(self):
        nums = tuple(scalar(x) for x in self.numerator)
        dens = tuple(scalar(x) for x in self.denominator)
        precs = {x.prec for x in (*nums, *dens) if x.is_float}
        if len(precs) > 1:
            p = max(precs)
            nums = tuple(x.to_float_scalar(p) if x.is_float else x for x in nums)
            dens = tuple(x.to_float_scalar(p) if x.is_float else x for x in dens)
        object.__setattr__(self, "numerator", nums)
        object.__setattr__(self, "denominator", dens)
        ks = [-a.nearest_integer()[0] for a in nums if a.is_nonpositive_integer()]
        kmin = min(ks) if ks else None
        for b in dens:
            if b.is_nonpositive_integer():
                d = -b.nearest_integer()[0]
                if kmin is None or kmin > d:
                    raise InvalidParametersError(
                        f"denominator parameter {b} is a nonpositive integer and no "
                        "numerator parameter truncates the series before the zero factor"
                    )

    @property
    def p(self) -> int:
        return len(self.numerator)

    @property
    def q(self) -> int:
        return len(self.denominator)

    def all_exact(self) -> bool:
        return all(x.is_exact for x in (*self.numerator, *self.denominator))

    def __repr__(self):
        ns = ", ".join(str(x) for x in self.numerator)
        ds = ", ".join(str(x) for x in self.denominator)
        return f"HypParams([{ns}], [{ds}])"


def _balance(params: HypParams) -> Scalar:
    """Sum of denominator parameters minus sum of numerator parameters."""
    acc = Scalar.exact(0)
    for b in params.denominator:
        acc = acc + b
    for a in params.numerator:
        acc = acc - a
    return acc


def _real_part_positive(x: Scalar) -> bool:
    if x.is_rational:
        return x.fraction > 0
    if x.is_exact:
        return x.to_mpc(113).real > 0
    return x.to_mpc(x.prec).real > 0


def classify(params: HypParams, ctx: Optional[EvalContext] = None) -> SeriesClassification:
    """Termination first (smallest truncation index wins), then the unit-
    argument convergence test for p = q+1; p <= q always converges and
    p > q+1 never does.  The saalschutzian flag tests balance == 1, exactly
    in exact mode and within abs_tol for float parameters."""
    ctx = ctx or DEFAULT_CONTEXT
    tol_dep = False
    ks = []
    for a in params.numerator:
        hit = a.nearest_integer()
        if hit is not None and hit[0] <= 0:
            ks.append(-hit[0])
            tol_dep = tol_dep or not hit[1]

    bal = _balance(params)
    if bal.is_exact:
        saal = bal == Scalar.exact(1)
    else:
        saal = abs((bal - 1).to_mpc(bal.prec)) <= ctx.abs_tol
        tol_dep = tol_dep or saal

    if ks:
        return SeriesClassification(SeriesKind.TERMINATING, k=min(ks),
                                    saalschutzian=saal, tolerance_dependent=tol_dep)
    if params.p == params.q + 1:
        kind = SeriesKind.CONVERGENT if _real_part_positive(bal) else SeriesKind.DIVERGENT
    elif params.p > params.q + 1:
        kind = SeriesKind.DIVERGENT
    else:
        kind = SeriesKind.CONVERGENT
    return SeriesClassification(kind, saalschutzian=saal, tolerance_dependent=tol_dep)


def term(params: HypParams, j: int) -> Scalar:
    """The j-th term, computed from first principles as a Pochhammer product
    ratio (no recurrence).  A vanishing denominator Pochhammer is a pole."""
    if j < 0:
        raise ValueError("term index must be >= 0")
    num = Scalar.exact(1)
    for a in params.numerator:
        num = num * pochhammer(a, j)
    den = Scalar.exact(math.factorial(j))
    for b in params.denominator:
        den = den * pochhammer(b, j)
    if den.is_zero():
        raise PoleError(f"denominator Pochhammer vanishes at index {j}", term_index=j)
    return num / den


def _ratio_factors(a_vals, b_vals, j):
    """Term ratio t_{j+1}/t_j as raw mp numbers."""
    num = mp.mpf(1)
    for a in a_vals:
        num = num * (a + j)
    den = mp.mpf(j + 1)
    for b in b_vals:
        den = den * (b + j)
    return num / den


def _sum_terminating_exact(params: HypParams, cls: SeriesClassification) -> EvalResult:
    t = Scalar.exact(1)
    acc = t
    for j in range(cls.k):
        num = Scalar.exact(1)
        for a in params.numerator:
            num = num * (a + j)
        den = Scalar.exact(j + 1)
        for b in params.denominator:
            den = den * (b + j)
        t = t * num / den
        acc = acc + t
    return EvalResult(SphereValue.of(acc), cls.k + 1, 0, cls)


def _sum_terminating_float(params: HypParams, cls: SeriesClassification,
                           ctx: EvalContext) -> EvalResult:
    prec_work = ctx.precision + 20
    with working_precision(prec_work):
        a_vals = [x.to_mpc(prec_work) for x in params.numerator]
        b_vals = [x.to_mpc(prec_work) for x in params.denominator]
        t = mp.mpc(1)
        acc = mp.mpc(1)
        for j in range(cls.k):
            t = t * _ratio_factors(a_vals, b_vals, j)
            acc = acc + t
    with working_precision(ctx.precision):
        val = +acc
    return EvalResult(SphereValue.of(Scalar(val=val, prec=ctx.precision)),
                      cls.k + 1, 0.0, cls)


def _sum_geometric(params: HypParams, cls: SeriesClassification,
                   ctx: EvalContext) -> EvalResult:
    """p <= q: ratios decay like j^(p-q-1); bound the tail geometrically once
    the absolute ratio is below 1 and has decreased three times running."""
    prec_work = ctx.precision + 20
    with working_precision(prec_work):
        a_vals = [x.to_mpc(prec_work) for x in params.numerator]
        b_vals = [x.to_mpc(prec_work) for x in params.denominator]
        t = mp.mpc(1)
        acc = mp.mpc(1)
        streak = 0
        prev_r = mp.inf
        for j in range(ctx.max_terms - 1):
            ratio = _ratio_factors(a_vals, b_vals, j)
            t = t * ratio
            acc = acc + t
            r = abs(ratio)
            streak = streak + 1 if r < prev_r else 0
            prev_r = r
            if r < 1 and streak >= 3:
                bound = abs(t) * r / (1 - r)
                if bound <= max(ctx.rel_tol * abs(acc), ctx.abs_tol):
                    with working_precision(ctx.precision):
                        val = +acc
                    return EvalResult(
                        SphereValue.of(Scalar(val=val, prec=ctx.precision)),
                        j + 2, float(bound), cls)
        partial = Scalar(val=acc, prec=prec_work)
    raise ConvergenceError(
        f"no certified tail bound within {ctx.max_terms} terms",
        partial=partial, terms_used=ctx.max_terms)


def _poly_mul(a, b, length):
    out = [mp.mpc(0)] * length
    for i, ai in enumerate(a):
        if i >= length:
            break
        for j, bj in enumerate(b):
            if i + j >= length:
                break
            out[i + j] += ai * bj
    return out


def _series_inv(a, length):
    # power-series reciprocal; a[0] must be nonzero
    out = [1 / a[0]]
    for t in range(1, length):
        s = mp.mpc(0)
        for i in range(1, min(t, len(a) - 1) + 1):
            s += a[i] * out[t - i]
        out.append(-s / a[0])
    return out


def _ratio_series(a_vals, b_vals, length):
    """Coefficients of r(x) = prod(1 + a_i x) / [prod(1 + b_j x) (1 + x)]
    where x = 1/N; valid for the balanced case p = q+1."""
    num = [mp.mpc(1)]
    for a in a_vals:
        num = _poly_mul(num, [mp.mpc(1), mp.mpc(a)], length)
    den = [mp.mpc(1)]
    for b in list(b_vals) + [mp.mpc(1)]:
        den = _poly_mul(den, [mp.mpc(1), mp.mpc(b)], length)
    return _poly_mul(num, _series_inv(den, length), length)


def _tail_coefficients(r, depth):
    """Solve for u(N) ~ c_{-1} N + c_0 + c_1/N + ... from u = 1 + r u(N+1).

    Substituting the ansatz and collecting powers of x = 1/N gives a lower
    triangular system.  The x^0 equation pins c_{-1} = 1/s with
    s = sum(den) - sum(num) (the convergence abscissa), and each higher
    order determines one further coefficient.
    """
    em1 = [-(r[t + 1] + r[t]) for t in range(depth + 1)]
    es = []
    for k in range(depth):
        # series of (1+x)^{-k}
        g = [mp.mpc(1)]
        for i in range(depth):
            g.append(g[-1] * (-(k + i)) / (i + 1))
        rg = _poly_mul(r, g, depth + 1)
        ek = [mp.mpc(0)] * (depth + 1)
        for t in range(k, depth + 1):
            ek[t] = (1 if t == k else 0) - rg[t - k]
        es.append(ek)
    cm1 = 1 / em1[0]
    cs = []
    for t in range(1, depth + 1):
        s = cm1 * em1[t]
        for k in range(t - 1):
            s += cs[k] * es[k][t]
        cs.append(-s / es[t - 1][t])
    return cm1, cs


def _tail_u(n, cm1, cs):
    x = mp.mpf(1) / n
    u = cm1 * n
    xp = mp.mpc(1)
    for c in cs:
        u += c * xp
        xp *= x
    return u


def _sum_balanced(params: HypParams, cls: SeriesClassification,
                  ctx: EvalContext) -> EvalResult:
    """p = q+1 at unit argument: partial sum to N plus the asymptotic tail
    correction t_N u(N), doubling N until two truncation depths agree."""
    depth = 18
    prec_work = ctx.precision + 40
    with working_precision(prec_work):
        a_vals = [x.to_mpc(prec_work) for x in params.numerator]
        b_vals = [x.to_mpc(prec_work) for x in params.denominator]
        r = _ratio_series(a_vals, b_vals, depth + 2)
        cm1, cs = _tail_coefficients(r, depth)
        maxmod = max([abs(v) for v in a_vals + b_vals] + [mp.mpf(1)])
        n = min(max(64, int(4 * maxmod) + 16), ctx.max_terms)
        acc = mp.mpc(0)
        t = mp.mpc(1)
        j = 0
        while True:
            while j < n:
                acc = acc + t
                t = t * _ratio_factors(a_vals, b_vals, j)
                j += 1
            u_hi = _tail_u(n, cm1, cs)
            u_lo = _tail_u(n, cm1, cs[:-4])
            total = acc + t * u_hi
            err = abs(t * (u_hi - u_lo))
            if err <= max(ctx.rel_tol * abs(total), ctx.abs_tol):
                with working_precision(ctx.precision):
                    val = +total
                return EvalResult(
                    SphereValue.of(Scalar(val=val, prec=ctx.precision)),
                    n, float(err), cls)
            if 2 * n > ctx.max_terms:
                partial = Scalar(val=total, prec=prec_work)
                raise ConvergenceError(
                    f"tail correction not certified within {ctx.max_terms} terms "
                    f"(estimated error {mp.nstr(err, 3)})",
                    partial=partial, terms_used=n)
            n *= 2


def eval_at_1(params: HypParams, ctx: EvalContext = DEFAULT_CONTEXT) -> EvalResult:
    """Sum the series at unit argument.

    Terminating series are summed exactly when every parameter is exact
    (falling back to float precision if the exact arithmetic cannot
    represent intermediate values); convergent ones are summed in float
    mode at ctx.precision until the estimated tail drops below
    max(rel_tol * |partial|, abs_tol).  Divergent input is refused.
    """
    cls = classify(params, ctx)
    if cls.kind in (SeriesKind.DIVERGENT, SeriesKind.UNDEFINED):
        raise DivergentSeriesError(
            f"refusing to sum a {cls.kind.value} series at unit argument", cls)
    if cls.kind is SeriesKind.TERMINATING:
        if params.all_exact():
            try:
                return _sum_terminating_exact(params, cls)
            except UnsupportedExactError:
                pass
        return _sum_terminating_float(params, cls, ctx)
    if params.p <= params.q:
        return _sum_geometric(params, cls, ctx)
    return _sum_balanced(params, cls, ctx)


def pfq(numerator: Sequence, denominator: Sequence,
        ctx: EvalContext = DEFAULT_CONTEXT) -> EvalResult:
    """Convenience wrapper: build HypParams and evaluate at unit argument."""
    return eval_at_1(HypParams(tuple(numerator), tuple(denominator)), ctx)
