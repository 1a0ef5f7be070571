"""Classical summation and transformation identities used as cross-checks:
Gauss's theorem for 2F1 at unit argument, the Pochhammer splitting form of
Gauss's multiplication formula, a 4F3 <-> 3F2 transformation due to Askey
and Ismail, and the limiting 2F1 evaluation it degenerates to.
"""

from __future__ import annotations

from typing import Optional

from .numeric_core import (
    DEFAULT_CONTEXT,
    EvalContext,
    PoleError,
    Scalar,
    SphereValue,
    UnsupportedExactError,
    gamma_ratio,
    pochhammer,
    scalar,
)
from .hyper_series import EvalResult, HypParams, eval_at_1

__all__ = [
    "gauss_closed_form",
    "gauss_series_converges",
    "pochhammer_multiplication_split",
    "askey_ismail_lhs",
    "askey_ismail_rhs",
    "askey_ismail_validity",
    "terminating_2f1_limit",
]


def gauss_series_converges(a, b, c) -> bool:
    """Whether 2F1(a,b;c;1) converges as a series: Re(c-a-b) > 0."""
    s = scalar(c) - scalar(a) - scalar(b)
    if s.is_rational:
        return s.fraction > 0
    return s.to_mpc(s.prec or 113).real > 0


def gauss_closed_form(a, b, c, ctx: Optional[EvalContext] = None) -> SphereValue:
    """Gamma(c) Gamma(c-a-b) / (Gamma(c-a) Gamma(c-b)), the value of
    2F1(a,b;c;1) whenever the series converges (gauss_series_converges).

    The four gammas are paired into two ratios so that an integer a (or b)
    turns each ratio into a finite Pochhammer symbol even when the
    individual gammas sit on poles.  Exact inputs that summation at gamma's
    exact domain cannot handle fall back to float at ctx.precision.
    """
    ctx = ctx or DEFAULT_CONTEXT
    a, b, c = scalar(a), scalar(b), scalar(c)
    # pair so integer-difference reduction fires when possible
    if not a.is_integer() and b.is_integer():
        a, b = b, a
    try:
        return gamma_ratio(c, c - a) * gamma_ratio(c - a - b, c - b)
    except UnsupportedExactError:
        fa, fb, fc = (ctx.float_scalar(x) for x in (a, b, c))
        return gamma_ratio(fc, fc - fa) * gamma_ratio(fc - fa - fb, fc - fb)


def pochhammer_multiplication_split(base, n: int, j: int) -> Scalar:
    """(base)_{n j} rewritten as n^{nj} * prod_{i=1}^{n} ((base+i-1)/n)_j.

    This is the Pochhammer form of Gauss's multiplication formula; it is
    what turns a stride-n product of gamma ratios into n ordinary
    hypergeometric parameters.
    """
    if n < 1:
        raise ValueError("n must be a positive integer")
    if j < 0:
        raise ValueError("j must be a nonnegative integer")
    base = scalar(base)
    acc = Scalar.exact(n) ** (n * j)
    for i in range(1, n + 1):
        acc = acc * pochhammer((base + (i - 1)) / n, j)
    return acc


def askey_ismail_validity(a, d) -> bool:
    """The stated validity condition Re(d) > Re(a) > 0 of the transformation.

    Terminating instances are finite rational expressions that hold beyond
    it, so this is reported alongside results rather than enforced.
    """
    a, d = scalar(a), scalar(d)
    ra = a.fraction if a.is_rational else a.to_mpc(a.prec or 113).real
    rd = d.fraction if d.is_rational else d.to_mpc(d.prec or 113).real
    return rd > ra > 0


def askey_ismail_lhs(a, c, d, k: int, ctx: EvalContext = DEFAULT_CONTEXT) -> EvalResult:
    """4F3(a/2, (a+1)/2, -k, c; d/2, (d+1)/2, -k+a+c+1-d; 1), terminating."""
    if k < 0:
        raise ValueError("k must be a nonnegative integer")
    a, c, d = scalar(a), scalar(c), scalar(d)
    params = HypParams(
        (a / 2, (a + 1) / 2, Scalar.exact(-k), c),
        (d / 2, (d + 1) / 2, a + c + 1 - d - k),
    )
    return eval_at_1(params, ctx)


def askey_ismail_rhs(a, c, d, k: int, ctx: EvalContext = DEFAULT_CONTEXT) -> EvalResult:
    """(d-a)_k (d-c)_k / ((d-a-c)_k (d)_k) times 3F2(-k, a, c; k+d, d-c; 1)."""
    if k < 0:
        raise ValueError("k must be a nonnegative integer")
    a, c, d = scalar(a), scalar(c), scalar(d)
    den = pochhammer(d - a - c, k) * pochhammer(d, k)
    if den.is_zero():
        raise PoleError("vanishing Pochhammer in the prefactor denominator")
    prefactor = pochhammer(d - a, k) * pochhammer(d - c, k) / den
    inner = eval_at_1(HypParams((Scalar.exact(-k), a, c), (d + k, d - c)), ctx)
    return EvalResult(
        value=SphereValue.of(prefactor) * inner.value,
        terms_used=inner.terms_used,
        tail_bound=inner.tail_bound,
        classification=inner.classification,
    )


def terminating_2f1_limit(k: int, a) -> Scalar:
    """The limit of 2F1(-k, a; -k+eps; 1) as eps -> 0: (-k-a)_k / (-k)_k.

    The naive parameter set has -k in the denominator, which the series
    definition rejects; perturbing and passing to the limit gives this
    finite Pochhammer ratio instead.
    """
    if k < 0:
        raise ValueError("k must be a nonnegative integer")
    if k == 0:
        return Scalar.exact(1)
    a = scalar(a)
    return pochhammer(-k - a, k) / pochhammer(Scalar.exact(-k), k)
