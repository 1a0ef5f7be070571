"""The central summation S(alpha, beta, m, z) in its four representations,
plus the proof-level identities that make the terminating evaluation work.

S is defined through gamma-function ratios:

    S = m * sum_j  G(beta+1+jz) G(m+j(z+1))
                   ------------------------------  (alpha)_j / j!
                   G(alpha+beta+1+j(z+1)) G(m+jz+1)

For alpha = -k (a nonpositive integer) the sum truncates and every gamma
ratio collapses to a Pochhammer symbol, so the value is an exact rational
expression in beta, m, z; the claimed closed form is
Gamma(beta+1-m)/Gamma(alpha+beta+1-m) = (beta+1-m-k)_k, and it is
independent of z.  For nonterminating alpha the closed form generally
fails; only z = 0 (with convergence) is covered, and all other
nonterminating evaluations here are marked experimental.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Tuple

from mpmath import mp

from .numeric_core import (
    DEFAULT_CONTEXT,
    DivergentSeriesError,
    ConvergenceError,
    EvalContext,
    IdentityAssertionError,
    InvalidParametersError,
    PoleError,
    Scalar,
    SphereValue,
    UnsupportedExactError,
    _gamma_plane,
    _near_int,
    gamma_ratio,
    pochhammer,
    scalar,
    working_precision,
)
from .hyper_series import (
    EvalResult,
    HypParams,
    SeriesClassification,
    SeriesKind,
    eval_at_1,
)

__all__ = [
    "RamanujanParams",
    "PolynomialInZ",
    "s_closed_form",
    "s_direct",
    "s_integer_form",
    "recast_params",
    "s_polynomial",
    "inner_sum_E",
    "finite_difference_check",
    "eq6_prefactor",
]


@dataclass(frozen=True)
class RamanujanParams:
    """Arguments of S.  When alpha is a nonpositive integer -k the series
    terminates after k+1 terms; k is detected on construction."""

    alpha: object
    beta: object
    m: object
    z: object
    terminating_k: Optional[int] = field(init=False, default=None)

    def __post_init__(self):
        for name in ("alpha", "beta", "m", "z"):
            object.__setattr__(self, name, scalar(getattr(self, name)))
        hit = self.alpha.nearest_integer()
        if hit is not None and hit[0] <= 0:
            object.__setattr__(self, "terminating_k", -hit[0])

    def all_exact(self) -> bool:
        return all(x.is_exact for x in (self.alpha, self.beta, self.m, self.z))

    def __repr__(self):
        return (f"RamanujanParams(alpha={self.alpha}, beta={self.beta}, "
                f"m={self.m}, z={self.z})")


@dataclass(frozen=True)
class PolynomialInZ:
    """A polynomial in z with Scalar coefficients, index = power of z."""

    coefficients: Tuple[Scalar, ...]

    @property
    def degree(self) -> int:
        for i in range(len(self.coefficients) - 1, -1, -1):
            if not self.coefficients[i].is_zero():
                return i
        return 0

    @property
    def constant_term(self) -> Scalar:
        return self.coefficients[0]

    def z_coefficients(self) -> Tuple[Scalar, ...]:
        """Coefficients of z^i for i >= 1 (the ones the theorem kills)."""
        return self.coefficients[1:]

    def evaluate(self, z) -> Scalar:
        z = scalar(z)
        acc = Scalar.exact(0)
        for c in reversed(self.coefficients):
            acc = acc * z + c
        return acc

    def __str__(self):
        parts = [f"({c})*z^{i}" if i else f"({c})"
                 for i, c in enumerate(self.coefficients)]
        return " + ".join(parts)


def _terminating_cls(k: int) -> SeriesClassification:
    return SeriesClassification(SeriesKind.TERMINATING, k=k)


def s_closed_form(p: RamanujanParams, ctx: Optional[EvalContext] = None) -> SphereValue:
    """Gamma(beta+1-m) / Gamma(alpha+beta+1-m), via gamma_ratio so that the
    terminating case reduces to the exact Pochhammer value (beta+1-m-k)_k.

    Falls back to float gammas at ctx precision when the arguments admit no
    exact gamma evaluation (nonterminating alpha with generic rationals).
    """
    x = p.beta + 1 - p.m
    y = p.alpha + x
    if x.is_exact and y.is_exact:
        try:
            return gamma_ratio(x, y)
        except UnsupportedExactError:
            pass
    ctx = ctx or DEFAULT_CONTEXT
    return gamma_ratio(ctx.float_scalar(x), ctx.float_scalar(y))


def _direct_term(alpha_k: int, beta: Scalar, m: Scalar, z: Scalar, j: int) -> Scalar:
    """Term j >= 1 of the reduced series for alpha = -k:
    m * (beta+1-k+j(z+1))_{k-j} (m+jz+1)_{j-1} (-k)_j / j!."""
    k = alpha_k
    t = m * pochhammer(beta + 1 - k + j * (z + 1), k - j)
    t = t * pochhammer(m + j * z + 1, j - 1)
    t = t * pochhammer(Scalar.exact(-k), j)
    return t / math.factorial(j)


def _s_direct_terminating(p: RamanujanParams, ctx: EvalContext) -> EvalResult:
    k = p.terminating_k
    if p.all_exact():
        try:
            # j = 0: the leading m cancels (m+1)_{-1} = 1/m symbolically,
            # leaving (beta+1-k)_k; this keeps m = 0 well-defined.
            acc = pochhammer(p.beta + 1 - k, k)
            for j in range(1, k + 1):
                acc = acc + _direct_term(k, p.beta, p.m, p.z, j)
            return EvalResult(SphereValue.of(acc), k + 1, 0, _terminating_cls(k))
        except UnsupportedExactError:
            pass
    fb, fm, fz = (ctx.float_scalar(x) for x in (p.beta, p.m, p.z))
    acc = pochhammer(fb + 1 - k, k)
    for j in range(1, k + 1):
        acc = acc + _direct_term(k, fb, fm, fz, j)
    return EvalResult(SphereValue.of(acc), k + 1, 0.0, _terminating_cls(k))


def _s_direct_experimental(p: RamanujanParams, ctx: EvalContext) -> EvalResult:
    """Nonterminating alpha with non-integer z: term-by-term float gammas.

    Outside the ground the closed form is known to cover, hence flagged
    experimental.  The terms decay only like 1/j^2 (the gamma-argument
    growth rates cancel to the exponent beta-m + m-alpha-beta-1 + alpha-1),
    so the partial sums are Richardson-extrapolated in 1/N over doubling
    cutoffs instead of waiting for a geometric tail.
    """
    prec_work = ctx.precision + 30
    with working_precision(prec_work):
        fa, fb, fm, fz = (x.to_mpc(prec_work)
                          for x in (ctx.float_scalar(v)
                                    for v in (p.alpha, p.beta, p.m, p.z)))
        acc = mp.mpc(0)
        poch_a = mp.mpc(1)
        fact = mp.mpf(1)
        grow_streak = 0
        prev_mag = None
        partials = []
        target = 128
        j = 0
        while True:
            while j < target:
                if j > 0:
                    poch_a = poch_a * (fa + (j - 1))
                    fact = fact * j
                t = _gamma_term_float(fa, fb, fm, fz, j)
                if t is not None:
                    t = t * poch_a / fact
                    acc = acc + t
                    mag = abs(t)
                    if prev_mag is not None and prev_mag > 0:
                        grow_streak = grow_streak + 1 if mag >= prev_mag else 0
                        if j > 32 and grow_streak >= 16:
                            raise DivergentSeriesError(
                                "direct series terms stopped decreasing; "
                                "treating as divergent",
                                SeriesClassification(SeriesKind.DIVERGENT))
                    prev_mag = mag
                j += 1
            partials.append(acc)
            if len(partials) >= 4:
                best, err = _richardson(partials)
                if err <= max(ctx.rel_tol * abs(best), ctx.abs_tol):
                    with working_precision(ctx.precision):
                        val = +(fm * best)
                    return EvalResult(
                        SphereValue.of(Scalar(val=val, prec=ctx.precision)),
                        j, float(err * max(abs(fm), mp.mpf(1))),
                        SeriesClassification(SeriesKind.CONVERGENT),
                        experimental=True)
            if 2 * target > ctx.max_terms:
                partial = Scalar(val=fm * acc, prec=prec_work)
                raise ConvergenceError(
                    f"direct series not certified within {ctx.max_terms} terms",
                    partial=partial, terms_used=j)
            target *= 2


def _gamma_term_float(fa, fb, fm, fz, j):
    """One gamma-ratio term of the direct series (without (alpha)_j/j! and
    the leading m), or None when a denominator gamma pole kills the term.
    A numerator pole is contamination and raises."""
    args_num = (fb + 1 + j * fz, fm + j * (fz + 1))
    args_den = (fa + fb + 1 + j * (fz + 1), fm + j * fz + 1)
    for x in args_num:
        if _near_nonpositive_int(x):
            raise PoleError(
                f"gamma pole contaminates term {j} of the direct series",
                term_index=j)
    num = mp.mpc(1)
    for x in args_num:
        num = num * _gamma_plane(x, 0)
    den = mp.mpc(1)
    for x in args_den:
        if _near_nonpositive_int(x):
            return None
        den = den * _gamma_plane(x, 0)
    return num / den


def _near_nonpositive_int(x) -> bool:
    hit = _near_int(x.real, x.imag)
    return hit is not None and hit[0] <= 0


def _richardson(partials):
    """Neville tableau for S(h) = S - B1 h - B2 h^2 - ... sampled at
    h_i = h_0 / 2^i; returns (extrapolated value, error estimate)."""
    row = list(partials)
    prev_best = row[-1]
    for k in range(1, len(partials)):
        w = mp.mpf(2) ** k
        row = [(w * row[i + 1] - row[i]) / (w - 1) for i in range(len(row) - 1)]
        err = abs(row[-1] - prev_best)
        prev_best = row[-1]
    return prev_best, err


def s_direct(p: RamanujanParams, ctx: EvalContext = DEFAULT_CONTEXT) -> EvalResult:
    """S summed from its defining series.

    Terminating alpha = -k: exact finite sum (k+1 terms) via the reduced
    Pochhammer form, in exact arithmetic whenever the inputs are exact.
    Nonterminating with z a nonnegative integer: handled by the
    hypergeometric rewrite (s_integer_form).  Anything else is evaluated
    experimentally with per-term float gammas.
    """
    if p.terminating_k is not None:
        return _s_direct_terminating(p, ctx)
    hit = p.z.nearest_integer()
    if hit is not None and hit[0] >= 0:
        return s_integer_form(p, ctx)
    return _s_direct_experimental(p, ctx)


def _prefactor(p: RamanujanParams, ctx: EvalContext) -> SphereValue:
    """Gamma(beta+1)/Gamma(alpha+beta+1), exact for integer alpha."""
    x = p.beta + 1
    y = p.alpha + x
    if x.is_exact and y.is_exact:
        try:
            return gamma_ratio(x, y)
        except UnsupportedExactError:
            pass
    return gamma_ratio(ctx.float_scalar(x), ctx.float_scalar(y))


def _stride_term(p: RamanujanParams, n: int, j: int, beta, m, alpha) -> Scalar:
    num = pochhammer(beta + 1, n * j) * pochhammer(m, (n + 1) * j) * pochhammer(alpha, j)
    den = (pochhammer(alpha + beta + 1, (n + 1) * j) * pochhammer(m + 1, n * j)
           * math.factorial(j))
    if den.is_zero():
        raise PoleError(
            f"denominator Pochhammer vanishes at term {j} of the stride form",
            term_index=j)
    return num / den


def s_integer_form(p: RamanujanParams, ctx: EvalContext = DEFAULT_CONTEXT) -> EvalResult:
    """S at z = n, a nonnegative integer, through the stride-Pochhammer
    hypergeometric rewrite with prefactor Gamma(beta+1)/Gamma(alpha+beta+1).

    Terminating series are summed exactly in the stride form itself;
    nonterminating ones go through the parameter-split (recast_params for
    n >= 1, a plain 2F1 for n = 0) and the engine's tail machinery, which
    refuses divergent input.
    """
    hit = p.z.nearest_integer()
    if hit is None or hit[0] < 0:
        raise InvalidParametersError(
            f"s_integer_form needs z a nonnegative integer, got z = {p.z}")
    n = hit[0]
    k = p.terminating_k
    pref = _prefactor(p, ctx)
    if k is not None:
        if p.all_exact():
            try:
                acc = Scalar.exact(0)
                for j in range(k + 1):
                    acc = acc + _stride_term(p, n, j, p.beta, p.m, p.alpha)
                return EvalResult(pref * SphereValue.of(acc), k + 1, 0,
                                  _terminating_cls(k))
            except UnsupportedExactError:
                pass
        fb, fm, fa = (ctx.float_scalar(x) for x in (p.beta, p.m, p.alpha))
        acc = Scalar.from_float(0, ctx.precision)
        for j in range(k + 1):
            acc = acc + _stride_term(p, n, j, fb, fm, fa)
        return EvalResult(pref * SphereValue.of(acc), k + 1, 0.0,
                          _terminating_cls(k))
    if n == 0:
        params = HypParams((p.m, p.alpha), (p.alpha + p.beta + 1,))
    else:
        params, pref = recast_params(p.alpha, p.beta, p.m, n, ctx)
    res = eval_at_1(params, ctx)
    return EvalResult(pref * res.value, res.terms_used, res.tail_bound,
                      res.classification)


def recast_params(alpha, beta, m, n: int,
                  ctx: Optional[EvalContext] = None) -> Tuple[HypParams, SphereValue]:
    """Split the stride Pochhammers of the z = n form into ordinary
    hypergeometric parameters (multiplication formula with strides n and
    n+1), giving a (2n+2)F(2n+1) at unit argument plus the prefactor
    Gamma(beta+1)/Gamma(alpha+beta+1).

    The resulting parameter lists are balanced with excess exactly 1
    (classify reports saalschutzian) for every n >= 1.
    """
    if n < 1:
        raise InvalidParametersError("recast_params needs n >= 1")
    alpha, beta, m = scalar(alpha), scalar(beta), scalar(m)
    nums = tuple((beta + i) / n for i in range(1, n + 1)) \
        + tuple((m + i) / (n + 1) for i in range(n + 1)) + (alpha,)
    dens = tuple((m + i) / n for i in range(1, n + 1)) \
        + tuple((alpha + beta + 1 + i) / (n + 1) for i in range(n + 1))
    params = HypParams(nums, dens)
    x = beta + 1
    y = alpha + beta + 1
    if x.is_exact and y.is_exact:
        try:
            return params, gamma_ratio(x, y)
        except UnsupportedExactError:
            pass
    ctx = ctx or DEFAULT_CONTEXT
    return params, gamma_ratio(ctx.float_scalar(x), ctx.float_scalar(y))


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        for j, bj in enumerate(b):
            out[i + j] += ai * bj
    return out


def _poch_fraction(base: Fraction, j: int) -> Fraction:
    acc = Fraction(1)
    for i in range(j):
        acc *= base + i
    return acc


def s_polynomial(k: int, beta, m) -> PolynomialInZ:
    """Expand m * sum_j (beta+1-k+j(z+1))_{k-j} (m+jz+1)_{j-1} (-k)_j / j!
    as an explicit polynomial in z (exact rational coefficients).

    The j = 0 term's (m+1)_{-1} = 1/m is cancelled against the leading m
    before anything is evaluated, so m = 0 is fine.  Degree is at most
    k-1 by construction; the theorem says every z-coefficient vanishes and
    the constant term is (beta+1-m-k)_k.
    """
    if k < 0:
        raise ValueError("k must be a nonnegative integer")
    beta, m = scalar(beta), scalar(m)
    if not (beta.is_rational and m.is_rational):
        raise UnsupportedExactError("polynomial expansion needs rational beta, m")
    b, mf = beta.fraction, m.fraction
    coeffs = [Fraction(0)] * max(k, 1)
    coeffs[0] = _poch_fraction(b + 1 - k, k)
    for j in range(1, k + 1):
        scale = mf * _poch_fraction(Fraction(-k), j) / math.factorial(j)
        if scale == 0:
            continue
        poly = [Fraction(1)]
        for i in range(k - j):
            poly = _poly_mul(poly, [b + 1 - k + j + i, Fraction(j)])
        for i in range(j - 1):
            poly = _poly_mul(poly, [mf + 1 + i, Fraction(j)])
        for power, c in enumerate(poly):
            coeffs[power] += scale * c
    return PolynomialInZ(tuple(Scalar.exact(c) for c in coeffs))


def inner_sum_E(m, n: int, r: int) -> Scalar:
    """E = sum_{j=0}^{r} [(m+r)_{nj} / (m+1)_{nj}] (-1)^j C(r, j).

    Exact; equals 1 at r = 0 and 0 for every r >= 1.  The ratio of stride
    Pochhammers is updated incrementally so the cost is O(n r) ring
    operations rather than O(n r^2).
    """
    if n < 1:
        raise InvalidParametersError("inner_sum_E needs n >= 1")
    if r < 0:
        raise ValueError("r must be a nonnegative integer")
    m = scalar(m)
    if m.is_rational:
        mf = m.fraction
        ratio = Fraction(1)
        acc = Fraction(0)
        for j in range(r + 1):
            acc += (-1) ** j * math.comb(r, j) * ratio
            if j < r:
                for i in range(n * j, n * (j + 1)):
                    den = mf + 1 + i
                    if den == 0:
                        raise PoleError(
                            f"(m+1)_{{{n}j}} vanishes before j = {j + 1}",
                            term_index=j + 1)
                    ratio = ratio * (mf + r + i) / den
        return Scalar.exact(acc)
    ratio = Scalar.from_float(1, m.prec)
    acc = Scalar.from_float(0, m.prec)
    for j in range(r + 1):
        acc = acc + (-1) ** j * math.comb(r, j) * ratio
        if j < r:
            for i in range(n * j, n * (j + 1)):
                den = m + 1 + i
                if den.is_zero():
                    raise PoleError(
                        f"(m+1)_{{{n}j}} vanishes before j = {j + 1}",
                        term_index=j + 1)
                ratio = ratio * (m + r + i) / den
    return acc


def _falling(p: Scalar, t: int) -> Scalar:
    return pochhammer(p - (t - 1), t)


def finite_difference_check(m, n: int, r: int) -> Scalar:
    """(r-1)-th derivative of x^{m+r-1} (1 - x^n)^r at x = 1, by expanding
    the binomial and differentiating monomials: the result is
    sum_j (-1)^j C(r,j) (m+r-1+nj)(m+r-2+nj)...(m+1+nj), a falling
    factorial of length r-1 per term.  Exactly zero, since the zero of
    (1-x^n)^r at x = 1 has order r > r-1."""
    if n < 1:
        raise InvalidParametersError("finite_difference_check needs n >= 1")
    if r < 1:
        raise ValueError("r must be a positive integer")
    m = scalar(m)
    acc = Scalar.exact(0)
    for j in range(r + 1):
        p = m + (r - 1 + n * j)
        acc = acc + (-1) ** j * math.comb(r, j) * _falling(p, r - 1)
    return acc


def eq6_prefactor(alpha, beta, m,
                  ctx: Optional[EvalContext] = None) -> SphereValue:
    """The reflected prefactor Gamma(m-b) Gamma(-a-b) / (Gamma(-b) Gamma(m-a-b))
    for integer alpha, cross-checked against the unreflected
    Gamma(b+1) Gamma(a+b+1-m) / (Gamma(a+b+1) Gamma(b+1-m)).

    The reflection Gamma(x) Gamma(1-x) = pi / sin(pi x) converts one form
    into the other; the sine quotient it leaves behind is exactly 1
    because alpha shifts the arguments by integers.  Both forms are
    computed (each as two integer-difference gamma ratios) and compared,
    exactly in exact mode and within rel_tol in float mode; disagreement
    raises IdentityAssertionError rather than returning silently.
    """
    ctx = ctx or DEFAULT_CONTEXT
    a, b, mm = scalar(alpha), scalar(beta), scalar(m)
    if not (a.is_exact and b.is_exact and mm.is_exact):
        a, b, mm = (ctx.float_scalar(x) for x in (a, b, mm))
    hit = a.nearest_integer()
    if hit is None:
        raise InvalidParametersError(
            "the reflected prefactor requires integer alpha (the sine factors "
            "only cancel there)")
    reflected = gamma_ratio(mm - b, mm - a - b) * gamma_ratio(-(a + b), -b)
    direct = gamma_ratio(b + 1, a + b + 1) * gamma_ratio(a + b + 1 - mm, b + 1 - mm)
    if reflected.is_infinity or direct.is_infinity:
        if reflected.is_infinity != direct.is_infinity:
            raise IdentityAssertionError(
                f"reflected prefactor {reflected} disagrees with direct form {direct}")
        return reflected
    lhs, rhs = reflected.finite, direct.finite
    if lhs.is_exact and rhs.is_exact:
        agree = lhs == rhs
    else:
        lv = lhs.to_mpc(ctx.precision)
        rv = rhs.to_mpc(ctx.precision)
        scale = max(abs(lv), abs(rv))
        agree = scale == 0 or abs(lv - rv) <= ctx.rel_tol * scale
    if not agree:
        raise IdentityAssertionError(
            f"reflected prefactor {lhs} disagrees with direct form {rhs}")
    return reflected
