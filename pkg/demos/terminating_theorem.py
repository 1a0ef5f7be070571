"""
A terminating sum that forgets its stride
=========================================

When the outer parameter is a negative integer -k, the weighted gamma-ratio
sum S collapses to a single Pochhammer symbol that does not involve the
stride z at all. Every z gives the same rational number, and the verifier
can certify that with literal equality.
"""

from fractions import Fraction

from hypersum import (
    RamanujanParams,
    s_closed_form,
    s_direct,
    s_polynomial,
    verify_theorem,
)

F = Fraction

beta, m, k = F(1, 2), F(1, 3), 2

# the closed form: (beta + 1 - m - k)_k
closed = s_closed_form(RamanujanParams(alpha=-k, beta=beta, m=m, z=0))
print("closed form:", closed)

# direct summation at several strides, including non-integer ones
for z in (0, 1, 3, F(7, 2), F(-5, 3)):
    res = s_direct(RamanujanParams(alpha=-k, beta=beta, m=m, z=z))
    print(f"z = {str(z):>4}: S =", res.value, f"({res.terms_used} terms)")

# the polynomial view makes the z-independence structural: expand S as a
# polynomial in z and watch every coefficient above the constant vanish
poly = s_polynomial(k=k, beta=beta, m=m)
print("coefficients in z:", [str(c) for c in poly.coefficients])

# the verifier packages the comparison with a verdict
report = verify_theorem(k=k, beta=beta, m=m, z=F(7, 2))
print("verdict:", report.verdict.value, "| lhs =", report.lhs, "| rhs =", report.rhs)
