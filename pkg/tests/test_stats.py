import math

import numpy as np
import pytest
import scipy.special
import scipy.stats
from hypothesis import given
from hypothesis import strategies as st

from eaglestrat.stats import betainc_regularized, t_sf_two_sided, two_sample_t_test

samples = st.lists(st.floats(-1e3, 1e3, allow_nan=False), min_size=2, max_size=30).filter(
    lambda xs: np.ptp(xs) > 1e-6
)


def test_pooled_hand_example():
    r = two_sample_t_test([1, 2, 3, 4, 5], [2, 3, 4, 5, 6], equal_variance=True)
    assert r.t_statistic == pytest.approx(-1.0, abs=1e-12)
    assert r.degrees_of_freedom == 8
    assert r.p_value == pytest.approx(0.3466, abs=1e-4)


def test_identical_samples():
    r = two_sample_t_test([1.0, 2.0, 4.0], [1.0, 2.0, 4.0])
    assert r.t_statistic == 0.0 and r.p_value == pytest.approx(1.0)


def test_constant_samples():
    assert two_sample_t_test([3, 3, 3], [3, 3]).p_value == 1.0
    r = two_sample_t_test([20200] * 30, [350000] * 30)
    assert r.p_value == 0.0 and r.t_statistic == -math.inf
    assert r.significant_at(0.05)


def test_needs_two_per_sample():
    with pytest.raises(ValueError):
        two_sample_t_test([1.0], [1.0, 2.0])


@given(st.floats(0.1, 50), st.floats(0.1, 50), st.floats(0, 1))
def test_betainc_matches_scipy(a, b, x):
    assert betainc_regularized(a, b, x) == pytest.approx(scipy.special.betainc(a, b, x), abs=1e-10)


def test_betainc_domain():
    with pytest.raises(ValueError):
        betainc_regularized(0, 1, 0.5)
    with pytest.raises(ValueError):
        betainc_regularized(1, 1, 1.5)


@given(st.floats(-30, 30), st.floats(0.5, 200))
def test_t_tail_matches_scipy(t, dof):
    assert t_sf_two_sided(t, dof) == pytest.approx(2 * scipy.stats.t.sf(abs(t), dof), abs=1e-10)


@given(samples, samples, st.booleans())
def test_matches_scipy_ttest(a, b, pooled):
    ours = two_sample_t_test(a, b, equal_variance=pooled)
    ref = scipy.stats.ttest_ind(a, b, equal_var=pooled)
    assert ours.t_statistic == pytest.approx(ref.statistic, rel=1e-6, abs=1e-9)
    assert ours.p_value == pytest.approx(ref.pvalue, abs=1e-8)


@given(samples, samples, st.booleans())
def test_symmetry(a, b, pooled):
    ab = two_sample_t_test(a, b, pooled)
    ba = two_sample_t_test(b, a, pooled)
    assert ab.t_statistic == pytest.approx(-ba.t_statistic, rel=1e-9, abs=1e-12)
    assert ab.p_value == pytest.approx(ba.p_value, rel=1e-9, abs=1e-12)


@given(samples, samples, st.floats(1e-3, 1e3), st.booleans())
def test_scale_invariance(a, b, c, pooled):
    r = two_sample_t_test(a, b, pooled)
    s = two_sample_t_test([c * x for x in a], [c * x for x in b], pooled)
    assert s.t_statistic == pytest.approx(r.t_statistic, rel=1e-6, abs=1e-9)
    assert s.p_value == pytest.approx(r.p_value, rel=1e-6, abs=1e-9)


def test_t_tail_tiny_statistic():
    for t, dof in ((1.192092896e-07, 1.0), (1e-9, 50.0), (0.0, 3.0)):
        assert t_sf_two_sided(t, dof) == pytest.approx(2 * scipy.stats.t.sf(abs(t), dof), abs=1e-14)
