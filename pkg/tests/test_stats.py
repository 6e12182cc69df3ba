import math
import random

import numpy as np
import pytest
from scipy import stats as scipy_stats
from scipy.special import betainc as scipy_betainc

from trustkit.errors import DegenerateTestError, ValidationError
from trustkit.stats import (
    paired_t,
    regularized_incomplete_beta,
    student_t_cdf,
    student_t_sf,
    welch_t,
)


def test_incomplete_beta_against_scipy():
    rng = random.Random(17)
    for _ in range(500):
        a = rng.uniform(0.1, 50)
        b = rng.uniform(0.1, 50)
        x = rng.random()
        ours = regularized_incomplete_beta(a, b, x)
        ref = float(scipy_betainc(a, b, x))
        assert ours == pytest.approx(ref, abs=1e-10, rel=1e-8)


def test_t_cdf_against_scipy():
    rng = random.Random(29)
    for _ in range(500):
        df = rng.uniform(1, 200)
        t = rng.uniform(-8, 8)
        assert student_t_cdf(t, df) == pytest.approx(float(scipy_stats.t.cdf(t, df)), abs=1e-10)


def test_t_cdf_symmetry_and_midpoint():
    assert student_t_cdf(0.0, 5) == 0.5
    for t in (0.3, 1.7, 4.2):
        assert student_t_cdf(-t, 7) == pytest.approx(student_t_sf(t, 7), abs=1e-15)
        assert student_t_cdf(t, 7) + student_t_sf(t, 7) == pytest.approx(1.0, abs=1e-12)


def test_t_cdf_matches_monte_carlo():
    rng = np.random.default_rng(4242)
    n = 1_000_000
    df = 9.0
    draws = rng.standard_t(df, size=n)
    for q in (-2.0, -0.5, 0.0, 1.0, 2.5):
        empirical = float(np.mean(draws <= q))
        p = student_t_cdf(q, df)
        se = math.sqrt(p * (1 - p) / n)
        assert abs(empirical - p) <= 3 * se


def test_welch_identical_samples():
    result = welch_t([1.0, 2.0, 3.0], [1.0, 2.0, 3.0])
    assert result.t == 0.0
    assert result.p_value == pytest.approx(1.0, abs=1e-12)


def test_welch_worked_example():
    result = welch_t([1, 2, 3, 4, 5], [2, 3, 4, 5, 6])
    assert result.t == pytest.approx(-1.0, abs=1e-12)
    assert result.df == pytest.approx(8.0, abs=1e-12)
    assert result.p_value == pytest.approx(0.34659350708733416, abs=1e-3)


def test_welch_antisymmetry():
    rng = random.Random(3)
    for _ in range(50):
        a = [rng.gauss(0, 1) for _ in range(rng.randint(3, 12))]
        b = [rng.gauss(0.5, 2) for _ in range(rng.randint(3, 12))]
        fwd = welch_t(a, b)
        rev = welch_t(b, a)
        assert rev.t == pytest.approx(-fwd.t, abs=1e-12)
        assert rev.p_value == pytest.approx(fwd.p_value, abs=1e-12)


def test_welch_against_scipy_oracle():
    rng = random.Random(501)
    for _ in range(50):
        a = [rng.gauss(rng.uniform(-2, 2), rng.uniform(0.5, 3)) for _ in range(rng.randint(3, 30))]
        b = [rng.gauss(rng.uniform(-2, 2), rng.uniform(0.5, 3)) for _ in range(rng.randint(3, 30))]
        ours = welch_t(a, b)
        ref = scipy_stats.ttest_ind(a, b, equal_var=False)
        assert ours.t == pytest.approx(float(ref.statistic), abs=1e-6)
        assert ours.p_value == pytest.approx(float(ref.pvalue), abs=1e-4)
        greater = welch_t(a, b, tails="one", direction="greater")
        ref_g = scipy_stats.ttest_ind(a, b, equal_var=False, alternative="greater")
        assert greater.p_value == pytest.approx(float(ref_g.pvalue), abs=1e-4)


def test_welch_two_tailed_relation():
    rng = random.Random(11)
    for _ in range(50):
        a = [rng.gauss(0, 1) for _ in range(5)]
        b = [rng.gauss(1, 1) for _ in range(7)]
        two = welch_t(a, b)
        one = welch_t(a, b, tails="one", direction="greater")
        assert two.p_value == pytest.approx(2 * min(one.p_value, 1 - one.p_value), abs=1e-12)


def test_welch_degenerate():
    with pytest.raises(DegenerateTestError):
        welch_t([2.0, 2.0, 2.0], [5.0, 5.0])
    with pytest.raises(ValidationError):
        welch_t([1.0], [1.0, 2.0])


def test_paired_constant_shift_is_degenerate():
    with pytest.raises(DegenerateTestError):
        paired_t([1.0, 2.0, 3.0], [2.0, 3.0, 4.0])


def test_paired_worked_example():
    result = paired_t([1, 2, 3, 4], [2, 2, 5, 5], direction="greater")
    assert result.t == pytest.approx(2.449489742783178, abs=1e-9)
    assert result.df == 3.0
    assert result.p_value == pytest.approx(0.045860556655785936, abs=1e-3)


def test_paired_direction_flip():
    fwd = paired_t([1, 2, 3, 4], [2, 2, 5, 5], direction="greater")
    rev = paired_t([1, 2, 3, 4], [2, 2, 5, 5], direction="less")
    assert fwd.p_value + rev.p_value == pytest.approx(1.0, abs=1e-12)


def test_paired_against_scipy_oracle():
    rng = random.Random(888)
    for _ in range(50):
        n = rng.randint(3, 25)
        before = [rng.gauss(5, 2) for _ in range(n)]
        after = [x + rng.gauss(0.5, 1) for x in before]
        ours = paired_t(before, after, direction="greater")
        ref = scipy_stats.ttest_rel(after, before, alternative="greater")
        assert ours.t == pytest.approx(float(ref.statistic), abs=1e-6)
        assert ours.p_value == pytest.approx(float(ref.pvalue), abs=1e-4)


def test_paired_length_mismatch():
    with pytest.raises(ValidationError):
        paired_t([1.0, 2.0], [1.0, 2.0, 3.0])


def test_direction_tail_consistency_enforced():
    with pytest.raises(ValidationError):
        welch_t([1, 2, 3], [4, 5, 6], tails="two", direction="greater")
    with pytest.raises(ValidationError):
        welch_t([1, 2, 3], [4, 5, 6], tails="one", direction="unequal")
