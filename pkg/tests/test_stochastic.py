import math
from fractions import Fraction as F

import numpy as np
import pytest

from pmoran.errors import ValidationError
from pmoran.numrep import ProbVector, eval_f
from pmoran.stochastic import SampleBatch, f_numerators, ks_critical, ks_distance, sample_eta

P124 = ProbVector.parse("1/2,1/4,1/4")


def test_deterministic():
    a = sample_eta(P124, 12, 100, seed=5)
    b = sample_eta(P124, 12, 100, seed=5)
    c = sample_eta(P124, 12, 100, seed=6)
    assert a.numerators == b.numerators
    assert a.numerators != c.numerators


def test_prefix_stable_in_n():
    # sample i depends only on (seed, i)
    small = sample_eta(P124, 10, 20, seed=3)
    big = sample_eta(P124, 10, 200, seed=3)
    assert big.numerators[:20] == small.numerators


def test_digit_frequencies():
    n, depth = 20000, 5
    batch = sample_eta(P124, depth, n, seed=11)
    total = n * depth
    for d, p in enumerate(P124.p):
        count = int((batch.digits == d).sum())
        sigma = math.sqrt(total * float(p) * (1 - float(p)))
        assert abs(count - total * float(p)) <= 3 * sigma


def test_values_are_exact_radix_sums():
    batch = sample_eta(ProbVector.uniform(4), 6, 30, seed=1)
    for row, value in zip(batch.digits, batch.values):
        assert value == sum(F(int(d), 4**k) for k, d in enumerate(row, 1))
    assert np.allclose(batch.floats(), [float(v) for v in batch.values])


def test_depth_one_law():
    batch = sample_eta(P124, 1, 4000, seed=2)
    assert set(batch.values) <= {0, F(1, 3), F(2, 3)}
    share = sum(1 for v in batch.values if v == 0) / batch.n
    assert abs(share - 0.5) < 0.03


def test_exact_f_matches_eval_f():
    batch = sample_eta(P124, 15, 50, seed=9)
    nums, den = f_numerators(batch.digits, P124)
    for num, x in zip(nums, batch.values):
        value, bound = eval_f(x, P124, depth=64)
        assert bound == 0
        assert F(num, den) == value


def test_ks_single_zero_sample():
    # one draw at 0: the ECDF jumps to 1 where f is 0
    batch = SampleBatch(P124, 3, 0, np.zeros((1, 3), dtype=np.int64), (0,))
    assert ks_distance(batch) == 1.0


def test_ks_against_independent_oracle():
    batch = sample_eta(P124, 20, 300, seed=4)
    f = sorted(float(eval_f(x, P124)[0]) for x in batch.values)
    n = len(f)
    oracle = max(max((i + 1) / n - v, v - i / n) for i, v in enumerate(f))
    assert ks_distance(batch) == pytest.approx(oracle, abs=1e-12)


def test_ks_law_across_seeds():
    n = 4000
    bad = 0
    for seed in range(10):
        d = ks_distance(sample_eta(P124, 30, n, seed=seed))
        bad += d > ks_critical(n) + 0.003
    assert bad <= 1


def test_wrong_law_is_detected():
    # samples drawn under one P, tested against another
    batch = sample_eta(P124, 30, 5000, seed=1)
    swapped = SampleBatch(ProbVector.uniform(3), batch.depth, batch.seed, batch.digits, batch.numerators)
    assert ks_distance(swapped) > 0.05


def test_validation():
    with pytest.raises(ValidationError):
        sample_eta(P124, 0, 10)
    with pytest.raises(ValidationError):
        sample_eta(P124, 5, 0)
