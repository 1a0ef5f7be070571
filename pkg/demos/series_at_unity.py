"""
Hypergeometric series at unit argument
======================================

The boundary point x = 1 is where convergence is decided by the parameter
excess alone. This walks through classification, evaluation, and the Gauss
closed form for 2F1.
"""

from fractions import Fraction

from hypersum import (
    EvalContext,
    HypParams,
    classify,
    eval_at_1,
    gauss_closed_form,
    pfq,
)

F = Fraction

# a terminating series: the numerator parameter -3 cuts the sum off
p = HypParams(numerator=(-3, F(1, 2)), denominator=(F(5, 2),))
print("classification:", classify(p).kind.value)
res = eval_at_1(p)
print("2F1(-3, 1/2; 5/2; 1) =", res.value, f"({res.terms_used} terms)")

# a nonterminating but convergent one: excess = c - a - b = 3/2 > 0
p = HypParams(numerator=(F(1, 3), F(1, 4)), denominator=(F(25, 12),))
print("classification:", classify(p).kind.value)
ctx = EvalContext(precision=128)
res = eval_at_1(p, ctx)
print("2F1(1/3, 1/4; 25/12; 1) =", res.value)
print("tail bound:", res.tail_bound)

# the same value in closed form via Gauss:
# Gamma(c) Gamma(c-a-b) / (Gamma(c-a) Gamma(c-b))
print("Gauss closed form      =", gauss_closed_form(F(1, 3), F(1, 4), F(25, 12), ctx))

# pfq is the convenience wrapper when you have raw parameter lists
print("3F2 at unity:", pfq((-2, 1, F(3, 2)), (2, F(7, 2))).value)

# excess <= 0 means divergence, and evaluation refuses rather than
# returning garbage
p = HypParams(numerator=(1, 2), denominator=(F(3, 2),))
print("classification:", classify(p).kind.value)
try:
    eval_at_1(p)
except Exception as exc:
    print("refused:", exc)
