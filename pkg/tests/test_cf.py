"""Expansion tests: certified quotients, escalation, exact surd recurrence."""

from fractions import Fraction

import mpmath as mp
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cfcert import (
    DecimalLiteral,
    PartialQuotients,
    PiPower,
    PrecisionBudget,
    PrecisionError,
    Surd,
    certify,
    convergents_iter,
    eval_constant,
    expand,
    surd_expand,
)

from reference_data import PI2_QUOTIENTS_27


def mp_expansion(x, n: int) -> list[int]:
    """Oracle expansion by plain floor/reciprocal at high precision."""
    terms = []
    for _ in range(n):
        a = int(mp.floor(x))
        terms.append(a)
        x = 1 / (x - a)
    return terms


class TestExpand:
    def test_pi2_27_terms(self):
        q = expand(PiPower(2, 1), 27)
        assert list(q.terms[:27]) == PI2_QUOTIENTS_27
        assert q.certified_count >= 27

    def test_pi_prefix_against_oracle(self):
        q = expand(PiPower(1, 1), 20)
        with mp.workdps(80):
            assert list(q.terms[:20]) == mp_expansion(mp.pi, 20)

    def test_literal_half(self):
        q = expand(DecimalLiteral("0.5"), 10)
        assert list(q.terms) == [0, 2]
        assert q.terminated
        assert q.certified_count == 2

    def test_literal_canonical_last_quotient(self):
        # canonical form ends with a quotient >= 2 whenever length > 1
        for text in ("0.3", "2.875", "-0.5", "123.456"):
            q = expand(DecimalLiteral(text), 5)
            if len(q.terms) > 1:
                assert q.terms[-1] >= 2
            value = Fraction(q.terms[-1])
            for a in reversed(q.terms[:-1]):
                value = a + 1 / value
            assert value == Fraction(text)

    def test_sqrt2_interval_path(self):
        q = expand(Surd(0, 1, 2, 1), 8)
        assert list(q.terms[:8]) == [1, 2, 2, 2, 2, 2, 2, 2]

    def test_want_terms_validation(self):
        with pytest.raises(ValueError):
            expand(PiPower(2, 1), 0)

    def test_cap_reports_partial_progress(self):
        with pytest.raises(PrecisionError) as exc_info:
            expand(PiPower(2, 1), 27, PrecisionBudget(6, guard=0, cap=40))
        assert exc_info.value.certified_count is not None
        assert 0 < exc_info.value.certified_count < 27

    def test_quotient_positivity(self):
        q = expand(PiPower(2, 1), 40)
        assert all(a >= 1 for a in q.terms[1:])


class TestCertify:
    def test_sufficient_budget(self):
        assert certify(PiPower(2, 1), 27, PrecisionBudget(60)) >= 27

    def test_insufficient_budget(self):
        assert certify(PiPower(2, 1), 27, PrecisionBudget(5, guard=2)) < 27

    def test_exact_rational(self):
        assert certify(DecimalLiteral("0.5"), 10, PrecisionBudget(5)) == 2

    def test_cap_too_tight_for_agreement_pass(self):
        with pytest.raises(PrecisionError):
            certify(PiPower(2, 1), 5, PrecisionBudget(30, guard=10, cap=45))


class TestReconstruction:
    @pytest.mark.parametrize("spec,terms", [
        (PiPower(2, 1), 25),
        (Surd(0, 1, 2, 1), 30),
        (Surd(1, 1, 5, 2), 30),
        (PiPower(1, 1), 20),
    ])
    def test_convergent_error_below_inverse_square(self, spec, terms):
        q = expand(spec, terms)
        convs = convergents_iter(q, terms - 1)
        alpha = eval_constant(spec, PrecisionBudget(2 * terms + 40))
        for c in convs:
            err = abs(alpha - c.value)
            assert err.certainly_less_than(Fraction(1, c.q * c.q))


class TestSurdExpand:
    def test_sqrt2(self):
        sx = surd_expand(Surd(0, 1, 2, 1), 10)
        assert list(sx.quotients.terms[:10]) == [1] + [2] * 9
        assert (sx.preperiod, sx.period) == (1, 1)

    def test_golden_ratio(self):
        sx = surd_expand(Surd(1, 1, 5, 2), 10)
        assert list(sx.quotients.terms[:10]) == [1] * 10
        assert (sx.preperiod, sx.period) == (0, 1)

    def test_sqrt7_period_four(self):
        sx = surd_expand(Surd(0, 1, 7, 1), 12)
        assert list(sx.quotients.terms[:9]) == [2, 1, 1, 1, 4, 1, 1, 1, 4]
        assert sx.period == 4
        assert sx.period_terms == (1, 1, 1, 4)

    def test_negative_surd(self):
        sx = surd_expand(Surd(0, -1, 2, 1), 8)
        with mp.workdps(50):
            assert list(sx.quotients.terms[:8]) == mp_expansion(-mp.sqrt(2), 8)

    def test_all_terms_certified(self):
        sx = surd_expand(Surd(3, 2, 13, 5), 25)
        assert sx.quotients.certified_count == len(sx.quotients.terms) >= 25

    @settings(max_examples=40, deadline=None)
    @given(st.integers(-9, 9), st.integers(1, 9), st.integers(2, 80),
           st.integers(1, 9))
    def test_against_float_oracle(self, a, b, d, c):
        from math import isqrt
        if isqrt(d) ** 2 == d:
            return
        sx = surd_expand(Surd(a, b, d, c), 12)
        with mp.workdps(60):
            oracle = mp_expansion((a + b * mp.sqrt(d)) / c, 10)
        assert list(sx.quotients.terms[:10]) == oracle

    @settings(max_examples=15, deadline=None)
    @given(st.integers(-5, 5), st.sampled_from([1, 2, 3, -1, -2]),
           st.sampled_from([2, 3, 5, 7, 11, 13]), st.sampled_from([1, 2, 3, -3]))
    def test_exact_and_interval_paths_agree(self, a, b, d, c):
        spec = Surd(a, b, d, c)
        exact = surd_expand(spec, 15)
        interval = expand(spec, 15, PrecisionBudget(60))
        n = min(15, interval.certified_count)
        assert list(exact.quotients.terms[:n]) == list(interval.terms[:n])

    def test_rejects_perfect_square(self):
        with pytest.raises(ValueError):
            surd_expand(Surd(0, 1, 16, 1), 5)

    def test_rejects_non_surd(self):
        with pytest.raises(TypeError):
            surd_expand(PiPower(2, 1), 5)


class TestPartialQuotients:
    def test_validation(self):
        with pytest.raises(ValueError):
            PartialQuotients((), 0)
        with pytest.raises(ValueError):
            PartialQuotients((1, 0, 2), 3)
        with pytest.raises(ValueError):
            PartialQuotients((1, 2), 5)

    def test_sequence_protocol(self):
        q = PartialQuotients((9, 1, 6), 3)
        assert len(q) == 3 and q[1] == 1 and list(q) == [9, 1, 6]
