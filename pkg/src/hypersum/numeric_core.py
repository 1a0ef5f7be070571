"""Arithmetic foundation: exact rationals, extended-precision complex floats,
gamma, Pochhammer symbols, and Riemann-sphere values.

Two arithmetic modes live behind one scalar type.  Exact scalars are
rationals, optionally scaled by an integer power of sqrt(pi) so that gamma
at half-integers stays representable (Gamma(3/2) = sqrt(pi)/2).  Float
scalars are mpmath complex values carrying their own binary precision;
mixing two different float precisions in one operation is an error rather
than a silent downgrade.

Gamma ratios are first-class (``gamma_ratio``) because most expressions in
this library are ratios whose individual gammas may sit on poles while the
ratio itself is finite: whenever the argument difference is an integer the
ratio reduces to a Pochhammer symbol and is computed exactly.
"""

from __future__ import annotations

import enum
import math
import threading
from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

import mpmath
from mpmath import mp

__all__ = [
    "Mode",
    "Scalar",
    "SphereValue",
    "EvalContext",
    "DEFAULT_CONTEXT",
    "scalar",
    "gamma",
    "pochhammer",
    "pochhammer_sphere",
    "gamma_ratio",
    "working_precision",
    "INTEGER_DETECTION_TOL",
    "HypersumError",
    "UnsupportedExactError",
    "PoleError",
    "IndeterminateError",
    "PrecisionMixError",
    "DivergentSeriesError",
    "ConvergenceError",
    "InvalidParametersError",
    "IdentityAssertionError",
]

# Tolerance for deciding "is this float an integer" (pole detection etc.).
# Exact mode always uses true equality; float results that relied on this
# snap are flagged tolerance_dependent.
INTEGER_DETECTION_TOL = 1e-12

MIN_PRECISION = 53


class HypersumError(Exception):
    """Base class for all errors raised by this library."""


class UnsupportedExactError(HypersumError):
    """An exact result was requested at a point with no exact representation."""


class PoleError(HypersumError):
    """A value is infinite where a finite one was required."""

    def __init__(self, message: str, term_index: Optional[int] = None):
        super().__init__(message)
        self.term_index = term_index


class IndeterminateError(HypersumError):
    """An expression of the form inf/inf or 0*inf with no finite reduction."""


class PrecisionMixError(HypersumError):
    """Two float scalars of different binary precision met in one operation."""


class DivergentSeriesError(HypersumError):
    """Refusal to sum a series classified as divergent."""

    def __init__(self, message: str, classification=None):
        super().__init__(message)
        self.classification = classification


class ConvergenceError(HypersumError):
    """The term budget ran out before the tail bound met the tolerance."""

    def __init__(self, message: str, partial=None, terms_used: int = 0):
        super().__init__(message)
        self.partial = partial
        self.terms_used = terms_used


class InvalidParametersError(HypersumError, ValueError):
    """Parameter lists that define no series (or no valid operation)."""


class IdentityAssertionError(HypersumError):
    """A built-in cross-check between two expressions failed."""


_PRECISION_LOCK = threading.RLock()


@contextmanager
def working_precision(prec: int):
    """Serialize access to mpmath's global precision and pin it to ``prec``."""
    with _PRECISION_LOCK:
        with mp.workprec(prec):
            yield


class Mode(enum.Enum):
    EXACT = "exact"
    FLOAT = "float"


def _near_int(re_val, im_val, tol: float = INTEGER_DETECTION_TOL):
    """Return (n, exact_hit) if re+im*i is within tol of the integer n."""
    if abs(im_val) > tol:
        return None
    n = int(mpmath.nint(re_val))
    if abs(re_val - n) > tol:
        return None
    return n, (re_val == n and im_val == 0)


class Scalar:
    """A number in one of two modes: exact (rational * sqrt(pi)^k) or float
    (complex at a fixed binary precision).

    Exact rationals are kept in lowest terms with positive denominator
    (Fraction guarantees this).  The sqrt(pi) power is 0 for ordinary
    rationals and only becomes nonzero through exact gamma evaluation at
    half-integers; sums that would mix different powers raise
    UnsupportedExactError instead of silently going inexact.
    """

    __slots__ = ("mode", "_coef", "_sqrtpi", "_val", "prec")

    def __init__(self, *, coef=None, sqrtpi=0, val=None, prec=None):
        if coef is not None:
            self.mode = Mode.EXACT
            self._coef = coef
            self._sqrtpi = sqrtpi if coef != 0 else 0
            self._val = None
            self.prec = None
        else:
            if prec is None or prec < MIN_PRECISION:
                raise ValueError(f"float precision must be >= {MIN_PRECISION} bits")
            self.mode = Mode.FLOAT
            self._coef = None
            self._sqrtpi = 0
            self._val = val
            self.prec = prec

    # -- construction -----------------------------------------------------

    @classmethod
    def exact(cls, value: Union[int, str, Fraction], den: Optional[int] = None) -> "Scalar":
        if den is not None:
            return cls(coef=Fraction(value, den))
        return cls(coef=Fraction(value))

    @classmethod
    def exact_sqrtpi(cls, coef: Union[int, str, Fraction], power: int = 1) -> "Scalar":
        return cls(coef=Fraction(coef), sqrtpi=power)

    @classmethod
    def from_float(cls, value, prec: int = MIN_PRECISION) -> "Scalar":
        with working_precision(prec):
            if isinstance(value, Fraction):
                v = mp.mpf(value.numerator) / mp.mpf(value.denominator)
                v = mp.mpc(v)
            else:
                v = mp.mpc(value)
        return cls(val=v, prec=prec)

    # -- inspection --------------------------------------------------------

    @property
    def is_exact(self) -> bool:
        return self.mode is Mode.EXACT

    @property
    def is_float(self) -> bool:
        return self.mode is Mode.FLOAT

    @property
    def is_rational(self) -> bool:
        return self.mode is Mode.EXACT and self._sqrtpi == 0

    @property
    def sqrtpi_power(self) -> int:
        return self._sqrtpi

    @property
    def fraction(self) -> Fraction:
        if not self.is_rational:
            raise UnsupportedExactError(f"{self!r} is not a plain rational")
        return self._coef

    @property
    def coefficient(self) -> Fraction:
        if not self.is_exact:
            raise UnsupportedExactError("float scalar has no exact coefficient")
        return self._coef

    def is_zero(self) -> bool:
        return self._coef == 0 if self.is_exact else self._val == 0

    def is_real(self, tol: float = 0.0) -> bool:
        if self.is_exact:
            return True
        return abs(self._val.imag) <= tol

    def nearest_integer(self, tol: float = INTEGER_DETECTION_TOL):
        """Return (n, exact_hit) when this value is (near-)integral, else None.

        Exact mode uses true equality; float mode uses ``tol`` and reports
        exact_hit=False when the match relied on it.
        """
        if self.is_exact:
            if self.is_rational and self._coef.denominator == 1:
                return int(self._coef), True
            return None
        return _near_int(self._val.real, self._val.imag, tol)

    def is_integer(self, tol: float = INTEGER_DETECTION_TOL) -> bool:
        return self.nearest_integer(tol) is not None

    def as_int(self) -> int:
        hit = self.nearest_integer()
        if hit is None:
            raise ValueError(f"{self} is not an integer")
        return hit[0]

    def is_nonpositive_integer(self, tol: float = INTEGER_DETECTION_TOL) -> bool:
        hit = self.nearest_integer(tol)
        return hit is not None and hit[0] <= 0

    # -- conversion ----------------------------------------------------------

    def to_mpc(self, prec: Optional[int] = None):
        """The value as an mpmath mpc, computed at ``prec`` bits."""
        p = prec if prec is not None else (self.prec or MIN_PRECISION)
        with working_precision(p + 10):
            if self.is_float:
                v = mp.mpc(self._val)
            else:
                v = mp.mpc(mp.mpf(self._coef.numerator) / mp.mpf(self._coef.denominator))
                if self._sqrtpi:
                    v = v * mp.sqrt(mp.pi) ** self._sqrtpi
        with working_precision(p):
            return +v

    def to_float_scalar(self, prec: int) -> "Scalar":
        return Scalar(val=self.to_mpc(prec), prec=prec)

    @property
    def real(self) -> "Scalar":
        if self.is_exact:
            return self
        return Scalar(val=mp.mpc(self._val.real), prec=self.prec)

    @property
    def imag(self) -> "Scalar":
        if self.is_exact:
            return Scalar.exact(0)
        return Scalar(val=mp.mpc(self._val.imag), prec=self.prec)

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other):
        """Normalize ``other`` to a Scalar, matching this value's float precision."""
        if isinstance(other, Scalar):
            return other
        if isinstance(other, (int, Fraction)):
            return Scalar(coef=Fraction(other))
        if isinstance(other, str):
            return Scalar(coef=Fraction(other))
        if isinstance(other, (float, complex, mpmath.mpf, mpmath.mpc)):
            return Scalar.from_float(other, self.prec or MIN_PRECISION)
        return NotImplemented

    def _pair(self, other):
        """Resolve operand modes: (EXACT, a, b) on Fractions+powers or (FLOAT, a, b, prec)."""
        if self.is_exact and other.is_exact:
            return ("exact", self, other)
        if self.is_float and other.is_float:
            if self.prec != other.prec:
                raise PrecisionMixError(
                    f"cannot mix {self.prec}-bit and {other.prec}-bit floats"
                )
            return ("float", self._val, other._val, self.prec)
        if self.is_float:
            return ("float", self._val, other.to_mpc(self.prec), self.prec)
        return ("float", self.to_mpc(other.prec), other._val, other.prec)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        kind, *rest = self._pair(other)
        if kind == "exact":
            a, b = rest
            if a._coef == 0:
                return b
            if b._coef == 0:
                return a
            if a._sqrtpi != b._sqrtpi:
                raise UnsupportedExactError(
                    "cannot add exact values with different sqrt(pi) powers"
                )
            return Scalar(coef=a._coef + b._coef, sqrtpi=a._sqrtpi)
        a, b, prec = rest
        with working_precision(prec):
            return Scalar(val=a + b, prec=prec)

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self):
        if self.is_exact:
            return Scalar(coef=-self._coef, sqrtpi=self._sqrtpi)
        with working_precision(self.prec):
            return Scalar(val=-self._val, prec=self.prec)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.__add__(-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other.__add__(-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        kind, *rest = self._pair(other)
        if kind == "exact":
            a, b = rest
            return Scalar(coef=a._coef * b._coef, sqrtpi=a._sqrtpi + b._sqrtpi)
        a, b, prec = rest
        with working_precision(prec):
            return Scalar(val=a * b, prec=prec)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        kind, *rest = self._pair(other)
        if kind == "exact":
            a, b = rest
            if b._coef == 0:
                raise ZeroDivisionError("exact division by zero")
            return Scalar(coef=a._coef / b._coef, sqrtpi=a._sqrtpi - b._sqrtpi)
        a, b, prec = rest
        if b == 0:
            raise ZeroDivisionError("float division by zero")
        with working_precision(prec):
            return Scalar(val=a / b, prec=prec)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other.__truediv__(self)

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if self.is_exact:
            if n >= 0 or self._coef != 0:
                return Scalar(coef=self._coef**n, sqrtpi=self._sqrtpi * n)
            raise ZeroDivisionError("0 to a negative power")
        with working_precision(self.prec):
            return Scalar(val=self._val**n, prec=self.prec)

    def __abs__(self):
        if self.is_exact:
            return Scalar(coef=abs(self._coef), sqrtpi=self._sqrtpi)
        with working_precision(self.prec):
            return Scalar(val=mp.mpc(abs(self._val)), prec=self.prec)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_exact and other.is_exact:
            return self._coef == other._coef and self._sqrtpi == other._sqrtpi
        kind, a, b, prec = self._pair(other)
        return a == b

    def __ne__(self, other):
        eq = self.__eq__(other)
        return NotImplemented if eq is NotImplemented else not eq

    __hash__ = None

    def _cmp_key(self, other):
        if self.is_rational and other.is_rational:
            return self._coef, other._coef
        prec = max(self.prec or 0, other.prec or 0, 113)
        a, b = self.to_mpc(prec), other.to_mpc(prec)
        if a.imag != 0 or b.imag != 0:
            raise TypeError("ordering is only defined for real values")
        return a.real, b.real

    def __lt__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._cmp_key(other)
        return a < b

    def __le__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._cmp_key(other)
        return a <= b

    def __gt__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._cmp_key(other)
        return a > b

    def __ge__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._cmp_key(other)
        return a >= b

    # -- formatting ----------------------------------------------------------

    def __repr__(self):
        if self.is_exact:
            if self._sqrtpi == 0:
                return f"Scalar({self._coef})"
            return f"Scalar({self._coef}*sqrt(pi)^{self._sqrtpi})"
        return f"Scalar({self._val}, prec={self.prec})"

    def __str__(self):
        if self.is_exact:
            body = str(self._coef)
            if self._sqrtpi == 1:
                body += "*sqrt(pi)"
            elif self._sqrtpi:
                body += f"*sqrt(pi)^{self._sqrtpi}"
            return body
        digits = max(17, int(self.prec * 0.30103) + 2)
        if self._val.imag == 0:
            return mpmath.nstr(self._val.real, digits)
        return mpmath.nstr(self._val, digits)


def scalar(x, prec: Optional[int] = None) -> Scalar:
    """Coerce ints/Fractions/strings to exact scalars and floats/complex to
    float scalars (at ``prec`` bits, default 53)."""
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (int, Fraction)):
        return Scalar.exact(x)
    if isinstance(x, str):
        return Scalar.exact(Fraction(x))
    if isinstance(x, (float, complex, mpmath.mpf, mpmath.mpc)):
        return Scalar.from_float(x, prec or MIN_PRECISION)
    raise TypeError(f"cannot make a Scalar from {type(x).__name__}")


@dataclass(frozen=True)
class SphereValue:
    """A Scalar extended with a single point at infinity (Riemann sphere).

    Exactly one of ``finite``/``is_infinity`` is set.  ``tolerance_dependent``
    marks values whose pole/integer classification relied on the float-mode
    integer-detection tolerance rather than exact equality.
    """

    finite: Optional[Scalar]
    is_infinity: bool
    tolerance_dependent: bool = False

    def __post_init__(self):
        if (self.finite is None) == (not self.is_infinity):
            raise ValueError("exactly one of finite/is_infinity must be set")

    @classmethod
    def of(cls, x, tolerance_dependent: bool = False) -> "SphereValue":
        return cls(finite=scalar(x), is_infinity=False,
                   tolerance_dependent=tolerance_dependent)

    @classmethod
    def infinity(cls, tolerance_dependent: bool = False) -> "SphereValue":
        return cls(finite=None, is_infinity=True,
                   tolerance_dependent=tolerance_dependent)

    def is_zero(self) -> bool:
        return not self.is_infinity and self.finite.is_zero()

    def reciprocal(self) -> "SphereValue":
        """1/x with the sphere conventions 1/inf = 0 and 1/0 = inf."""
        if self.is_infinity:
            return SphereValue.of(Scalar.exact(0),
                                  tolerance_dependent=self.tolerance_dependent)
        if self.finite.is_zero():
            return SphereValue.infinity(tolerance_dependent=self.tolerance_dependent)
        return SphereValue(finite=1 / self.finite, is_infinity=False,
                           tolerance_dependent=self.tolerance_dependent)

    def __mul__(self, other) -> "SphereValue":
        if not isinstance(other, SphereValue):
            other = SphereValue.of(other)
        td = self.tolerance_dependent or other.tolerance_dependent
        if self.is_infinity or other.is_infinity:
            if self.is_zero() or other.is_zero():
                raise IndeterminateError("0 * inf is indeterminate")
            return SphereValue.infinity(tolerance_dependent=td)
        return SphereValue(finite=self.finite * other.finite, is_infinity=False,
                           tolerance_dependent=td)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __truediv__(self, other) -> "SphereValue":
        if not isinstance(other, SphereValue):
            other = SphereValue.of(other)
        if self.is_infinity and other.is_infinity:
            raise IndeterminateError("inf / inf is indeterminate")
        if self.is_zero() and other.is_zero():
            raise IndeterminateError("0 / 0 is indeterminate")
        return self * other.reciprocal()

    def __eq__(self, other):
        if not isinstance(other, SphereValue):
            other = SphereValue.of(other)
        if self.is_infinity or other.is_infinity:
            return self.is_infinity and other.is_infinity
        return self.finite == other.finite

    def to_mpc(self, prec: Optional[int] = None):
        if self.is_infinity:
            raise PoleError("value is infinite")
        return self.finite.to_mpc(prec)

    def __str__(self):
        return "inf" if self.is_infinity else str(self.finite)

    def __repr__(self):
        return "SphereValue(inf)" if self.is_infinity else f"SphereValue({self.finite!r})"


@dataclass(frozen=True)
class EvalContext:
    """Evaluation knobs: float precision in bits, term budget, tolerances."""

    precision: int = 256
    max_terms: int = 100_000
    rel_tol: float = 1e-12
    abs_tol: float = 1e-30

    def __post_init__(self):
        if self.precision < MIN_PRECISION:
            raise ValueError(f"precision must be >= {MIN_PRECISION} bits")
        if self.max_terms < 1:
            raise ValueError("max_terms must be >= 1")
        if self.rel_tol <= 0 or self.abs_tol <= 0:
            raise ValueError("tolerances must be positive")

    def float_scalar(self, x) -> Scalar:
        if isinstance(x, Scalar):
            if x.is_float and x.prec == self.precision:
                return x
            return x.to_float_scalar(self.precision)
        if isinstance(x, (int, str, Fraction)):
            return Scalar.from_float(Fraction(x), self.precision)
        return Scalar.from_float(x, self.precision)


DEFAULT_CONTEXT = EvalContext()


# ---------------------------------------------------------------------------
# Gamma
# ---------------------------------------------------------------------------

# Classic Lanczos approximation, g = 7, 9 coefficients: relative error around
# 1e-15 over the right half-plane, which is the accuracy floor of the float
# gamma path regardless of working precision.
_LANCZOS_G = 7
_LANCZOS_COEFFS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def _gamma_plane(z, prec: int):
    """Lanczos gamma for an mpc ``z`` not at a pole; reflection for Re < 1/2."""
    if z.real < 0.5:
        # Gamma(z) Gamma(1-z) = pi / sin(pi z)
        return mp.pi / (mpmath.sinpi(z) * _gamma_plane(1 - z, prec))
    w = z - 1
    acc = mp.mpf(_LANCZOS_COEFFS[0])
    for i, c in enumerate(_LANCZOS_COEFFS[1:], start=1):
        acc += mp.mpf(c) / (w + i)
    t = w + _LANCZOS_G + mp.mpf("0.5")
    return mp.sqrt(2 * mp.pi) * t ** (w + mp.mpf("0.5")) * mp.e ** (-t) * acc


def _exact_half_integer_gamma(x: Fraction) -> Scalar:
    """Gamma at n + 1/2 as q * sqrt(pi), valid for every half-integer."""
    n = (x.numerator - 1) // 2
    if n >= 0:
        q = Fraction(math.factorial(2 * n), 4**n * math.factorial(n))
    else:
        j = -n
        q = Fraction((-4) ** j * math.factorial(j), math.factorial(2 * j))
    return Scalar.exact_sqrtpi(q)


def gamma(x: Scalar) -> SphereValue:
    """Gamma(x) as a sphere value; nonpositive-integer arguments map to inf.

    Exact mode handles integers (factorials) and half-integers (rational
    multiples of sqrt(pi)); any other exact argument raises
    UnsupportedExactError -- use gamma_ratio, whose Pochhammer reduction
    covers the remaining exact needs.  The float path is Lanczos plus
    reflection, good to ~1e-13 relative for |x| <= 50 away from poles.
    """
    x = scalar(x)
    if x.is_exact:
        if not x.is_rational:
            raise UnsupportedExactError("exact gamma of a sqrt(pi) multiple")
        f = x.fraction
        if f.denominator == 1:
            n = int(f)
            if n <= 0:
                return SphereValue.infinity()
            return SphereValue.of(Scalar.exact(math.factorial(n - 1)))
        if f.denominator == 2:
            return SphereValue.of(_exact_half_integer_gamma(f))
        raise UnsupportedExactError(
            f"gamma({f}) has no exact representation here; use gamma_ratio"
        )
    hit = x.nearest_integer()
    if hit is not None and hit[0] <= 0:
        return SphereValue.infinity(tolerance_dependent=not hit[1])
    with working_precision(x.prec + 20):
        v = _gamma_plane(x.to_mpc(x.prec + 20), x.prec)
    with working_precision(x.prec):
        return SphereValue.of(Scalar(val=+v, prec=x.prec))


# ---------------------------------------------------------------------------
# Pochhammer symbols
# ---------------------------------------------------------------------------


def pochhammer(a, j: int) -> Scalar:
    """Rising factorial (a)_j = a(a+1)...(a+j-1), extended to negative j by
    (a)_{-n} = 1/(a-n)_n.  Exact for exact ``a``; raises PoleError when a
    negative-index value is infinite (use pochhammer_sphere for those)."""
    a = scalar(a)
    if j >= 0:
        acc = Scalar.exact(1) if a.is_exact else Scalar.from_float(1, a.prec)
        for i in range(j):
            acc = acc * (a + i)
        return acc
    down = pochhammer(a + j, -j)
    if down.is_zero():
        raise PoleError(f"({a})_{j} is infinite: zero factor in the defining product")
    return 1 / down


def pochhammer_sphere(a, j: int) -> SphereValue:
    """Pochhammer symbol with poles mapped to the sphere point at infinity."""
    try:
        return SphereValue.of(pochhammer(a, j))
    except PoleError:
        return SphereValue.infinity()


# ---------------------------------------------------------------------------
# Gamma ratios
# ---------------------------------------------------------------------------


def gamma_ratio(x, y) -> SphereValue:
    """Gamma(x)/Gamma(y), surviving pole/pole cancellation.

    When x - y is an integer n the ratio *is* (y)_n (finite even when both
    gammas are individually infinite), computed exactly for exact inputs.
    Otherwise the two gammas are evaluated and divided, with 0 returned when
    only the denominator sits on a pole and inf when only the numerator does.
    Both on poles with non-integer difference is indeterminate.
    """
    x, y = scalar(x), scalar(y)
    diff = x - y
    hit = diff.nearest_integer()
    if hit is not None:
        n, exact_hit = hit
        return _mark(pochhammer_sphere(y, n), not exact_hit and diff.is_float)
    x_pole = x.is_nonpositive_integer()
    y_pole = y.is_nonpositive_integer()
    if x_pole and y_pole:
        # unreachable with exact inputs (difference would be integral)
        raise IndeterminateError(
            f"gamma_ratio({x}, {y}): two poles with non-integer difference"
        )
    if y_pole:
        zero = Scalar.exact(0) if (x.is_exact and y.is_exact) else \
            Scalar.from_float(0, y.prec or x.prec or MIN_PRECISION)
        return SphereValue.of(zero, tolerance_dependent=y.is_float)
    if x_pole:
        return SphereValue.infinity(tolerance_dependent=x.is_float)
    gx = gamma(x)
    gy = gamma(y)
    return SphereValue(finite=gx.finite / gy.finite, is_infinity=False,
                       tolerance_dependent=gx.tolerance_dependent or gy.tolerance_dependent)


def _mark(value: SphereValue, tolerance_dependent: bool) -> SphereValue:
    if not tolerance_dependent or value.tolerance_dependent:
        return value
    return SphereValue(finite=value.finite, is_infinity=value.is_infinity,
                       tolerance_dependent=True)
