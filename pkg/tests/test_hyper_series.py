import random
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from mpmath import mp

from hypersum.hyper_series import (
    EvalResult,
    HypParams,
    SeriesKind,
    classify,
    eval_at_1,
    pfq,
    term,
)
from hypersum.numeric_core import (
    ConvergenceError,
    DivergentSeriesError,
    EvalContext,
    InvalidParametersError,
    PoleError,
    Scalar,
)

F = Fraction


def exact_value(result: EvalResult) -> Fraction:
    return result.value.finite.fraction


class TestHypParams:
    def test_accepts_mixed_input_kinds(self):
        p = HypParams((1, "2/3", F(1, 2)), (2.5,))
        assert p.p == 3 and p.q == 1
        assert p.numerator[1].fraction == F(2, 3)
        assert p.denominator[0].is_float

    def test_rejects_untruncated_denominator_pole(self):
        with pytest.raises(InvalidParametersError):
            HypParams((F(1, 2),), (-2,))
        with pytest.raises(InvalidParametersError):
            HypParams((-3,), (-2,))  # truncation arrives after the zero factor

    def test_denominator_pole_behind_truncation_is_fine(self):
        HypParams((-2,), (-2,))  # k = d: last used factor is (-2+1)
        HypParams((-1, F(1, 3)), (-4,))

    def test_float_precisions_unified(self):
        p = HypParams((Scalar.from_float(1.5, 113),), (Scalar.from_float(2.5, 256),))
        assert p.numerator[0].prec == 256


class TestClassify:
    def test_zero_numerator_terminates_at_zero(self):
        cls = classify(HypParams((F(1, 2), 0), (F(3, 2),)))
        assert cls.kind is SeriesKind.TERMINATING and cls.k == 0

    def test_smallest_truncation_wins(self):
        cls = classify(HypParams((-5, -2), (F(1, 3),)))
        assert cls.k == 2

    def test_termination_beats_divergence(self):
        # balance is negative but the series is a finite sum anyway
        cls = classify(HypParams((-3, 10), (F(1, 2),)))
        assert cls.kind is SeriesKind.TERMINATING

    def test_balanced_convergence_criterion(self):
        assert classify(HypParams((1, 1), (3,))).kind is SeriesKind.CONVERGENT
        assert classify(HypParams((1, 1), (2,))).kind is SeriesKind.DIVERGENT
        # boundary case sits on the divergent side
        assert classify(HypParams((F(1, 2), F(1, 2)), (1,))).kind is SeriesKind.DIVERGENT

    def test_low_order_always_converges(self):
        assert classify(HypParams((), ())).kind is SeriesKind.CONVERGENT
        assert classify(HypParams((F(7, 2),), (F(1, 5), 9))).kind is SeriesKind.CONVERGENT

    def test_excess_numerators_diverge(self):
        assert classify(HypParams((F(1, 2), 1, 1), (2,))).kind is SeriesKind.DIVERGENT

    def test_saalschutzian_flag(self):
        assert classify(HypParams((1, 1), (3,))).saalschutzian
        assert not classify(HypParams((1, 1), (F(5, 2),))).saalschutzian

    @given(
        st.lists(st.fractions(min_value=-6, max_value=6, max_denominator=8),
                 min_size=0, max_size=4),
        st.data(),
    )
    @settings(max_examples=80, deadline=None)
    def test_permutation_invariance(self, nums, data):
        dens = data.draw(st.lists(
            st.fractions(min_value=F(1, 8), max_value=8, max_denominator=8),
            min_size=0, max_size=4))
        base = classify(HypParams(tuple(nums), tuple(dens)))
        shuffled_n = data.draw(st.permutations(nums))
        shuffled_d = data.draw(st.permutations(dens))
        assert classify(HypParams(tuple(shuffled_n), tuple(shuffled_d))) == base


class TestTerm:
    def test_j0_is_one(self):
        assert term(HypParams((F(9, 7), -3), (F(1, 2),)), 0).fraction == 1

    def test_direct_product(self):
        assert term(HypParams((1, 1), (3,)), 2).fraction == F(1, 6)

    def test_vanishing_numerator(self):
        assert term(HypParams((-1, F(1, 2)), (F(4, 3),)), 2).fraction == 0

    def test_vanishing_denominator_is_pole(self):
        p = HypParams((-2,), (-2,))
        with pytest.raises(PoleError):
            term(p, 3)


class TestTerminatingEval:
    def test_two_term_sum(self):
        a, c = F(1, 3), F(5, 7)
        r = pfq([-1, a], [c])
        assert exact_value(r) == 1 - a / c
        assert r.tail_bound == 0 and isinstance(r.tail_bound, int)

    def test_matches_termwise_sum(self):
        rng = random.Random(11)
        for _ in range(40):
            k = rng.randint(0, 6)
            a = F(rng.randint(-30, 30), rng.randint(1, 9))
            b = F(rng.randint(1, 30), rng.randint(1, 9))
            params = HypParams((-k, a), (b,))
            r = eval_at_1(params)
            expected = sum(term(params, j).fraction for j in range(k + 1))
            assert exact_value(r) == expected
            assert r.terms_used == k + 1

    def test_float_parameters_sum_completely(self):
        r = pfq([-3, 1.25], [2.5])
        # same series with exact parameters
        ref = pfq([-3, F(5, 4)], [F(5, 2)])
        assert abs(r.value.finite.to_mpc(113) -
                   Scalar.exact(exact_value(ref)).to_mpc(113)) < 1e-30
        assert r.tail_bound == 0.0 and isinstance(r.tail_bound, float)


class TestConvergentEval:
    def test_telescoping_value(self):
        # terms are 2/((j+1)(j+2)), so the sum telescopes to 2
        r = pfq([1, 1], [3])
        v = r.value.finite.to_mpc(256)
        assert abs(v - 2) < 1e-12
        assert r.classification.kind is SeriesKind.CONVERGENT

    def test_exponential_series(self):
        r = pfq([1], [2])  # sum 1/(j+1)! = e - 1
        with mp.workprec(256):
            assert abs(r.value.finite.to_mpc(256) - (mp.e - 1)) < 1e-11

    def test_gauss_random_sample(self):
        rng = random.Random(23)
        checked = 0
        while checked < 25:
            a = F(rng.randint(-30, 30), rng.randint(1, 8))
            b = F(rng.randint(-30, 30), rng.randint(1, 8))
            if a.denominator == 1 and a <= 0:
                a += F(1, 3)
            if b.denominator == 1 and b <= 0:
                b += F(1, 3)
            c = a + b + F(rng.randint(1, 5), 2)
            if c.denominator == 1 and c <= 0:
                continue
            r = pfq([a, b], [c])
            with mp.workprec(300):
                fr = lambda q: mp.mpf(q.numerator) / q.denominator
                try:
                    ref = (mpmath.gamma(fr(c)) * mpmath.gamma(fr(c - a - b)) /
                           (mpmath.gamma(fr(c - a)) * mpmath.gamma(fr(c - b))))
                except ValueError:
                    continue
                err = abs(r.value.finite.to_mpc(300) - ref) / abs(ref)
            assert err < 1e-10, (a, b, c, float(err))
            checked += 1

    def test_small_convergence_abscissa(self):
        # balance exactly 1/2, the slowest case the library certifies by default
        r = pfq([F(1, 4), F(1, 4)], [1])
        with mp.workprec(300):
            ref = (mpmath.gamma(1) * mpmath.gamma(mp.mpf("0.5")) /
                   mpmath.gamma(mp.mpf("0.75")) ** 2)
            err = abs(r.value.finite.to_mpc(300) - ref) / abs(ref)
        assert err < 1e-10

    def test_tail_bound_is_honest(self):
        r = pfq([1, 1], [3])
        actual = abs(r.value.finite.to_mpc(256) - 2)
        assert actual <= max(r.tail_bound * 10, 1e-30)


class TestRefusals:
    def test_divergent_raises(self):
        with pytest.raises(DivergentSeriesError):
            pfq([1, 1], [2])
        with pytest.raises(DivergentSeriesError):
            pfq([F(1, 2), 1, 1], [2])

    def test_budget_exhaustion_carries_partial(self):
        ctx = EvalContext(max_terms=40, rel_tol=1e-40, abs_tol=1e-45)
        with pytest.raises(ConvergenceError) as exc:
            pfq([F(1, 4), F(1, 4)], [1], ctx)
        assert exc.value.partial is not None
        assert exc.value.terms_used <= 40
