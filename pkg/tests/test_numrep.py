from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from pmoran.errors import BaseMismatch, NonPositiveEntry, OutOfRange, SumNotOne, WrongLength
from pmoran.numrep import (
    EventuallyPeriodicSeq as Seq,
    ProbVector,
    decode_negasadic,
    decode_P,
    decode_sadic,
    dual_sadic_forms,
    encode_sadic,
    eval_f,
    invert_f,
    is_sadic_terminating,
    periodic_sadic,
    validate_prob_vector,
)
from strategies import prob_vectors, truncated_p, truncated_radix, unit_rationals

P124 = ProbVector.parse("1/2,1/4,1/4")


class TestProbVector:
    def test_uniform_beta(self):
        assert validate_prob_vector(3, [F(1, 3)] * 3).beta == (0, F(1, 3), F(2, 3))

    def test_beta_cumulative(self):
        assert P124.beta == (0, F(1, 2), F(3, 4))

    def test_zero_entry_rejected(self):
        with pytest.raises(NonPositiveEntry) as exc:
            validate_prob_vector(3, ["1/2", "1/2", "0"])
        assert exc.value.index == 2

    def test_wrong_length(self):
        with pytest.raises(WrongLength):
            validate_prob_vector(3, ["1/2", "1/2"])

    def test_sum_not_one(self):
        with pytest.raises(SumNotOne):
            validate_prob_vector(3, ["1/2", "1/4", "1/8"])

    def test_float_refused(self):
        with pytest.raises(ValueError):
            validate_prob_vector(2, [0.5, 0.5])


class TestSeq:
    def test_parse_and_format(self):
        seq = Seq.parse("102(21)", 3)
        assert str(seq) == "102(21)"
        assert seq.digits(7) == (1, 0, 2, 2, 1, 2, 1)

    def test_canonical_rotation(self):
        # 1 0 (2 1 0 ...) -> the trailing 0 rolls into the period
        assert Seq(3, (1, 2, 1), (2, 1)) == Seq(3, (1,), (2, 1))
        assert Seq(3, (1, 0, 0), (0, 0)) == Seq(3, (1,), (0,))

    def test_minimal_period(self):
        assert Seq(3, (), (1, 2, 1, 2)).period == (1, 2)

    def test_missing_period_is_zero_tail(self):
        assert Seq.parse("12", 3) == Seq(3, (1, 2), (0,))


class TestDecode:
    def test_sadic_examples(self):
        assert decode_sadic(Seq.parse("1(0)", 3)) == F(1, 3)
        assert decode_sadic(Seq.parse("(1)", 3)) == F(1, 2)
        assert decode_sadic(Seq.parse("(2)", 3)) == 1

    def test_negasadic_examples(self):
        assert decode_negasadic(Seq.parse("0(0)", 3)) == 0
        assert decode_negasadic(Seq.parse("(1)", 3)) == F(-1, 4)
        assert decode_negasadic(Seq.parse("1(0)", 3)) == F(-1, 3)

    @pytest.mark.parametrize("text", ["(1)", "102(21)", "(012)", "2(2)", "(1)", "0(20)"])
    @pytest.mark.parametrize("s", [3, 4, 7])
    def test_closed_forms_match_truncated_series(self, text, s):
        seq = Seq.parse(text, s)
        n = 60
        assert abs(decode_sadic(seq) - truncated_radix(seq, s, n)) <= F(1, s**n)
        assert abs(decode_negasadic(seq) - truncated_radix(seq, -s, n)) <= F(1, s**n)

    @given(st.integers(3, 6), st.lists(st.integers(0, 5), max_size=4), st.lists(st.integers(0, 5), min_size=1, max_size=4))
    def test_negasadic_range(self, s, pre, per):
        seq = Seq(s, [d % s for d in pre], [d % s for d in per])
        assert F(-s, s + 1) <= decode_negasadic(seq) <= F(1, s + 1)

    def test_decode_P_examples(self):
        assert decode_P(Seq.parse("(1)", 3), P124) == F(2, 3)
        assert decode_P(Seq.parse("(12)", 3), P124) == F(11, 15)
        assert decode_P(Seq.parse("(0)", 3), P124) == 0

    def test_decode_P_base_mismatch(self):
        with pytest.raises(BaseMismatch):
            decode_P(Seq.parse("(1)", 4), P124)

    @given(prob_vectors(), st.lists(st.integers(0, 5), max_size=4), st.lists(st.integers(0, 5), min_size=1, max_size=3))
    def test_decode_P_matches_direct_series(self, P, pre, per):
        seq = Seq(P.s, [d % P.s for d in pre], [d % P.s for d in per])
        partial, tail = truncated_p(seq, P, 40)
        exact = decode_P(seq, P)
        assert partial <= exact <= partial + tail


class TestEncode:
    def test_examples(self):
        assert encode_sadic(F(11, 27), 3, 4) == ((1, 0, 2, 0), True)
        assert encode_sadic(F(1, 2), 3, 3) == ((1, 1, 1), False)
        assert encode_sadic(0, 3, 2) == ((0, 0), True)

    def test_out_of_range(self):
        with pytest.raises(OutOfRange):
            encode_sadic(F(3, 2), 3, 2)

    @given(st.integers(3, 7), st.integers(0, 6).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, 10**6))))
    def test_round_trip_terminating(self, s, n_and_a):
        n, a = n_and_a
        x = F(a % (s**n + 1), s**n)
        digits, exact = encode_sadic(x, s, n + 1)
        if x < 1:
            assert exact
            assert decode_sadic(Seq.finite(digits, s)) == x

    def test_dual_forms(self):
        assert dual_sadic_forms(F(1, 3), 3) == (Seq.parse("1(0)", 3), Seq.parse("0(2)", 3))
        assert dual_sadic_forms(F(1, 2), 3) is None
        assert dual_sadic_forms(F(8, 9), 3) == (Seq.parse("22(0)", 3), Seq.parse("21(2)", 3))

    @given(st.integers(3, 6), unit_rationals(200))
    def test_dual_forms_decode_to_x(self, s, x):
        if not 0 < x < 1:
            return
        forms = dual_sadic_forms(x, s)
        assert (forms is not None) == is_sadic_terminating(x, s)
        if forms:
            assert all(decode_sadic(f) == x for f in forms)

    @given(st.integers(3, 6), unit_rationals(300))
    def test_periodic_expansion_is_exact(self, s, x):
        if x == 1:
            return
        seq = periodic_sadic(x, s, 400)
        assert seq is not None
        assert decode_sadic(seq) == x


class TestEvalF:
    def test_examples(self):
        assert eval_f(F(7, 9), ProbVector.uniform(3)) == (F(7, 9), 0)
        assert eval_f(F(1, 3), P124) == (F(1, 2), 0)
        assert eval_f(1, P124) == (1, 0)
        assert eval_f(0, P124) == (0, 0)

    def test_out_of_range(self):
        with pytest.raises(OutOfRange):
            eval_f(F(-1, 5), P124)

    @given(st.integers(3, 6), unit_rationals(300))
    def test_uniform_identity(self, s, x):
        assert eval_f(x, ProbVector.uniform(s), depth=400) == (x, 0)

    @given(prob_vectors(), unit_rationals(200))
    def test_dual_representation_consistency(self, P, x):
        if not 0 < x < 1:
            return
        forms = dual_sadic_forms(x, P.s)
        if forms:
            a, b = forms
            assert decode_P(a, P) == decode_P(b, P) == eval_f(x, P)[0]

    @given(prob_vectors(), unit_rationals(100), unit_rationals(100))
    def test_strictly_increasing(self, P, x, y):
        if x == y:
            return
        x, y = min(x, y), max(x, y)
        fx, bx = eval_f(x, P, depth=200)
        fy, by = eval_f(y, P, depth=200)
        assert bx == by == 0
        assert fx < fy

    @given(prob_vectors(), st.lists(st.integers(0, 5), max_size=5))
    def test_cylinder_sup_maps_to_p_cylinder_sup(self, P, word):
        word = [d % P.s for d in word]
        x_sup = decode_sadic(Seq(P.s, word, (P.s - 1,)))
        assert eval_f(x_sup, P)[0] == decode_P(Seq(P.s, word, (P.s - 1,)), P)

    @given(prob_vectors(), unit_rationals(1000))
    def test_tail_bound_sound(self, P, x):
        exact, bound0 = eval_f(x, P, depth=2000)
        assert bound0 == 0
        approx, bound = eval_f(x, P, depth=8)
        assert approx <= exact <= approx + bound

    def test_truncation_reports_bound(self):
        # 1/7 in base 3 has period 6, so depth 4 cannot close the cycle
        value, bound = eval_f(F(1, 7), P124, depth=4)
        assert bound > 0


class TestInvertF:
    def test_examples(self):
        assert invert_f(F(1, 2), P124, 3) == (1, 0, 0)
        assert invert_f(F(7, 9), ProbVector.uniform(3), 2) == (2, 1)
        assert invert_f(0, P124, 4) == (0, 0, 0, 0)

    @given(prob_vectors(), unit_rationals(300), st.integers(1, 12))
    def test_inverts_eval_f(self, P, x, depth):
        if x == 1:
            return
        y, bound = eval_f(x, P, depth=400)
        assert bound == 0
        assert invert_f(y, P, depth) == encode_sadic(x, P.s, depth)[0]
