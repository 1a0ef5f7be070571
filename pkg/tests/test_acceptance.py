"""Acceptance gate: ten end-to-end criteria, each printing one line.

Every criterion here runs at its stated sample size and tolerance; the
samplers avoid only genuine poles (documented per criterion), never
inconvenient values.
"""

import random
import time
from fractions import Fraction as F

from hypersum.numeric_core import (
    DEFAULT_CONTEXT,
    InvalidParametersError,
    PoleError,
    Scalar,
)
from hypersum.hyper_series import HypParams, eval_at_1
from hypersum.classical_identities import (
    askey_ismail_lhs,
    askey_ismail_rhs,
    gauss_closed_form,
)
from hypersum.ramanujan_sum import (
    RamanujanParams,
    finite_difference_check,
    inner_sum_E,
    recast_params,
    s_closed_form,
    s_direct,
    s_integer_form,
    s_polynomial,
)
from hypersum.verifier import (
    Verdict,
    brute_force_oracle,
    counterexample_eq9,
    verify_theorem,
)


def report(log, n, ok, detail):
    line = f"criterion {n:2d}: {'PASS' if ok else 'FAIL'} - {detail}"
    print(line)
    log.append(line)
    assert ok, line


def rand_rational(rng, span=40, max_den=20):
    return F(rng.randint(-span, span), rng.randint(1, max_den))


def test_criterion_01_theorem_exact(acceptance_log):
    # s_direct(-k, beta, m, z) = (beta+1-m-k)_k with ExactMatch, all k in
    # 0..6, 50 random (beta, m) with denominators <= 20, six z values
    rng = random.Random(101)
    z_list = (0, 1, 2, 3, F(7, 2), F(-5, 3))
    failures = 0
    checked = 0
    t0 = time.monotonic()
    for k in range(7):
        for _ in range(50):
            beta, m = rand_rational(rng), rand_rational(rng)
            expect = 1
            for i in range(k):
                expect *= beta + 1 - m - k + i
            for z in z_list:
                rep = verify_theorem(k, beta, m, z)
                checked += 1
                if rep.verdict is not Verdict.EXACT_MATCH:
                    failures += 1
                elif rep.lhs.finite != Scalar.exact(expect):
                    failures += 1
    dt = time.monotonic() - t0
    ok = failures == 0 and dt < 10.0
    report(acceptance_log, 1, ok,
           f"{checked} exact theorem checks, {failures} failures, {dt:.1f}s")


def test_criterion_02_constancy_in_z(acceptance_log):
    # every z^i coefficient (i >= 1) of the expanded sum vanishes exactly
    rng = random.Random(102)
    failures = 0
    for k in range(1, 7):
        for _ in range(50):
            poly = s_polynomial(k, rand_rational(rng), rand_rational(rng))
            if any(not c.is_zero() for c in poly.z_coefficients()):
                failures += 1
    ok = failures == 0
    report(acceptance_log, 2, ok,
           f"300 polynomial expansions, {failures} nonconstant")


def test_criterion_03_z0_nonterminating(acceptance_log):
    # float (alpha, beta, m), alpha away from integers, Re(beta+1-m) >= 1/2:
    # s_integer_form(0) matches the closed form to 1e-9 relative
    rng = random.Random(103)
    worst = 0.0
    failures = 0
    t0 = time.monotonic()
    for _ in range(50):
        alpha = rng.uniform(0.1, 3.0)
        while abs(alpha - round(alpha)) < 0.05:
            alpha = rng.uniform(0.1, 3.0)
        beta = rng.uniform(-1.0, 3.0)
        m = beta + 1.0 - (0.5 + rng.uniform(0.0, 2.0))
        p = RamanujanParams(alpha, beta, m, 0)
        got = s_integer_form(p).value.finite.to_mpc(DEFAULT_CONTEXT.precision)
        want = s_closed_form(p).finite.to_mpc(DEFAULT_CONTEXT.precision)
        rel = float(abs(got - want) / abs(want))
        worst = max(worst, rel)
        if rel > 1e-9:
            failures += 1
    dt = time.monotonic() - t0
    ok = failures == 0 and dt < 30.0
    report(acceptance_log, 3, ok,
           f"50 z=0 float cases, worst rel {worst:.1e}, {dt:.1f}s")


def test_criterion_04_inner_sum(acceptance_log):
    # E = 0 exactly for r in 1..30, n in 1..10, 20 random rational m; E = 1
    # at r = 0.  m avoids nonpositive integers, where (m+1)_{nj} vanishes
    # (the operation's stated precondition).
    rng = random.Random(104)
    ms = []
    while len(ms) < 20:
        m = F(rng.randint(-60, 60), rng.randint(2, 20))
        if m.denominator > 1 or m > 0:
            ms.append(m)
    failures = 0
    for m in ms:
        if inner_sum_E(m, 3, 0) != Scalar.exact(1):
            failures += 1
        for n in range(1, 11):
            for r in range(1, 31):
                if inner_sum_E(m, n, r) != Scalar.exact(0):
                    failures += 1
    ok = failures == 0
    report(acceptance_log, 4, ok,
           f"{20 * 10 * 30} inner sums + 20 r=0 cases, {failures} failures")


def test_criterion_05_finite_difference(acceptance_log):
    failures = 0
    for m in (F(1, 2), F(1, 3), F(-7, 5), 4):
        for n in range(1, 6):
            for r in range(1, 11):
                if finite_difference_check(m, n, r) != Scalar.exact(0):
                    failures += 1
    ok = failures == 0
    report(acceptance_log, 5, ok,
           f"200 finite-difference checks, {failures} nonzero")


def test_criterion_06_saalschutzian(acceptance_log):
    # recast parameter lists balance to exactly 1.  m > 0 and
    # alpha+beta+1 > 0 keep the denominator parameters away from
    # nonpositive integers (construction would reject those).
    rng = random.Random(106)
    failures = 0
    for n in range(1, 7):
        for _ in range(50):
            m = abs(rand_rational(rng, 20, 10)) + F(1, 32)
            alpha = rand_rational(rng, 6, 10)
            beta = abs(rand_rational(rng, 20, 10)) - alpha
            params, _ = recast_params(alpha, beta, m, n)
            balance = sum((x.fraction for x in params.denominator), F(0)) \
                - sum((x.fraction for x in params.numerator), F(0))
            if balance != 1:
                failures += 1
    ok = failures == 0
    report(acceptance_log, 6, ok,
           f"300 recasts (n 1..6), {failures} off-balance")


def test_criterion_07_askey_ismail(acceptance_log):
    # lhs = rhs exactly for 100 random valid (a, c, d, k); draws whose
    # parameter lists are rejected or whose rhs prefactor poles are redrawn
    rng = random.Random(107)
    spot_l = askey_ismail_lhs(1, 1, 3, 1).value.finite
    spot_r = askey_ismail_rhs(1, 1, 3, 1).value.finite
    spot_ok = spot_l == Scalar.exact(F(7, 6)) and spot_r == spot_l
    matched = 0
    failures = 0
    attempts = 0
    while matched + failures < 100 and attempts < 3000:
        attempts += 1
        k = rng.randrange(6)
        a = F(rng.randint(-8, 12), rng.randint(1, 6))
        c = F(rng.randint(-8, 12), rng.randint(1, 6))
        d = F(rng.randint(-8, 12), rng.randint(1, 6))
        try:
            lhs = askey_ismail_lhs(a, c, d, k).value
            rhs = askey_ismail_rhs(a, c, d, k).value
        except (InvalidParametersError, PoleError):
            continue
        if lhs == rhs:
            matched += 1
        else:
            failures += 1
    ok = spot_ok and failures == 0 and matched == 100
    report(acceptance_log, 7, ok,
           f"spot 7/6 {'ok' if spot_ok else 'BAD'}, {matched} exact "
           f"agreements, {failures} failures")


def test_criterion_08_counterexample(acceptance_log):
    # m = alpha+beta+1, z = 1: three independent S(1) routes agree (checked
    # inside counterexample_eq9 at 1e-8), S(1) is nonzero, closed form is 0
    failures = []
    for alpha in (F(1, 3), F(1, 2), F(3, 4), F(5, 4)):
        for beta in (0, F(1, 2), 1):
            rep = counterexample_eq9(alpha, beta)
            value = abs(rep.lhs.finite.to_mpc(64))
            if rep.verdict is not Verdict.MISMATCH or value == 0 \
                    or rep.rhs.finite != Scalar.exact(0):
                failures.append((alpha, beta, rep.verdict))
    for alpha in (-1, -2):
        for beta in (F(1, 2), 1):
            rep = counterexample_eq9(alpha, beta)
            if rep.verdict is not Verdict.EXACT_MATCH \
                    or rep.lhs.finite != Scalar.exact(0):
                failures.append((alpha, beta, rep.verdict))
    ok = not failures
    report(acceptance_log, 8, ok,
           f"12 nonterminating Mismatches + 4 integer-alpha matches"
           f"{'' if ok else ': ' + repr(failures)}")


def test_criterion_09_gauss_engine(acceptance_log):
    # numeric 2F1 at unit argument against the closed form, 100 random
    # convergent parameter triples, 1e-10 relative (absolute floor when the
    # closed form is an exact zero)
    rng = random.Random(109)
    spot = eval_at_1(HypParams((1, 1), (3,))).value.finite.to_mpc(64)
    spot_ok = abs(spot - 2) < 1e-10
    worst = 0.0
    failures = 0
    for _ in range(100):
        a = F(rng.randint(-20, 20), rng.randint(1, 8))
        b = F(rng.randint(-20, 20), rng.randint(1, 8))
        c = a + b + F(1, 2) + F(rng.randint(0, 16), 4)
        if c.denominator == 1 and c <= 0:
            continue
        sv = eval_at_1(HypParams((a, b), (c,))).value.finite.to_mpc(256)
        cv = gauss_closed_form(a, b, c).finite.to_mpc(256)
        diff = abs(sv - cv)
        scale = max(abs(sv), abs(cv))
        if scale == 0 or diff < 1e-25:
            continue
        rel = float(diff / scale)
        worst = max(worst, rel)
        if rel > 1e-10:
            failures += 1
    ok = spot_ok and failures == 0
    report(acceptance_log, 9, ok,
           f"spot 2F1(1,1;3;1)={'2 ok' if spot_ok else 'BAD'}, 100 random, "
           f"worst rel {worst:.1e}, {failures} failures")


def test_criterion_10_oracle_independence(acceptance_log):
    # brute-force Fraction oracle vs s_direct vs the polynomial expansion,
    # 200 random terminating instances (m = 0 excluded: a genuine pole of
    # the raw series shape the oracle evaluates)
    rng = random.Random(110)
    failures = 0
    for _ in range(200):
        k = rng.randrange(7)
        beta = rand_rational(rng)
        m = rand_rational(rng) or F(1, 3)
        z = F(rng.randint(-12, 12), rng.randint(1, 6))
        want = brute_force_oracle(k, beta, m, z)
        direct = s_direct(RamanujanParams(-k, beta, m, z)).value.finite
        poly = s_polynomial(k, beta, m).evaluate(z)
        if direct != want or poly != want:
            failures += 1
    ok = failures == 0
    report(acceptance_log, 10, ok,
           f"200 three-way oracle agreements, {failures} disagreements")
