"""
Where the closed form stops working
===================================

Drop the termination condition and the tidy Pochhammer answer is simply
wrong. With m = alpha + beta + 1 the closed form is a ratio against
Gamma(0), hence exactly zero, while the series at z = 1 sums to something
visibly nonzero. Three independent evaluation routes agree on that nonzero
value before the verdict is issued.
"""

from fractions import Fraction

from hypersum import EvalContext, counterexample_eq9, summarize, sweep

F = Fraction

ctx = EvalContext(precision=128)

# alpha = beta = 1/2, so m = 2 and the closed form degenerates to 0
report = counterexample_eq9(alpha=F(1, 2), beta=F(1, 2), ctx=ctx)
print("series value:", report.lhs)
print("closed form: ", report.rhs)
print("verdict:     ", report.verdict.value)

# the three routes that were required to agree, straight from the report
for key in ("route_4f3", "route_2f1", "route_reduced"):
    print(f"{key:>14}:", report.context[key])

# restoring termination (integer alpha <= 0) restores the identity
report = counterexample_eq9(alpha=-1, beta=F(1, 2), ctx=ctx)
print("alpha = -1:", report.verdict.value, "at", report.lhs)

# a sweep shows the boundary: terminating points match exactly,
# nonterminating ones mismatch
grid = [
    {"alpha": a, "beta": F(1, 2), "m": F(1, 2) + a + 1, "z": 1}
    for a in (-2, -1, F(1, 3), F(1, 2), F(3, 4))
]
reports = sweep(grid, ctx=ctx)
for point, rep in zip(grid, reports):
    print(f"alpha = {str(point['alpha']):>4}:", rep.verdict.value)
print("summary:", summarize(reports))
