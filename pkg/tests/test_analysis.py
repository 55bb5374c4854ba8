import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from eaglestrat.analysis import (
    WalkKind,
    WalkSpec,
    brownian_variance,
    diffusion_coefficient,
    estimate_iterations_gaussian,
    estimate_iterations_levy,
    estimate_step_size,
    estimate_two_stage,
    fit_power_law,
    reduction_table,
    simulate_walk_variance,
)
from eaglestrat.sampling import rng_stream


def test_brownian_variance_examples():
    assert brownian_variance(10, 1, 0.5) == pytest.approx(10.0)
    assert brownian_variance(0, 3, 2.0, 5.0) == 0.0
    assert brownian_variance(4, 3, 1.0, 2.0) == pytest.approx(88.0)


def test_diffusion_coefficient():
    assert diffusion_coefficient(2.0, 4.0) == pytest.approx(0.5)


def test_step_sizes():
    assert estimate_step_size(1, 100, 1) == pytest.approx(0.01)
    assert estimate_step_size(1, 1000, 10) == pytest.approx(0.001)
    s = estimate_step_size(1, 1000, 100)
    assert s == pytest.approx(0.1 / math.sqrt(1e5))
    assert s == pytest.approx(1 / 3162, rel=0.06)


def test_step_size_domain():
    with pytest.raises(ValueError):
        estimate_step_size(1, 0, 1)
    with pytest.raises(ValueError):
        estimate_step_size(1, 10, 1, r_fraction=1.5)


def test_iteration_estimates():
    assert estimate_iterations_gaussian(10, 1e-5, 100) == pytest.approx(1e10)
    assert estimate_iterations_gaussian(10, 1e-2, 100) == pytest.approx(1e4)
    assert estimate_iterations_gaussian(0.01, 1e-5, 100) == pytest.approx(1e4)
    assert estimate_iterations_levy(10, 1e-5, 100, 1.5) == pytest.approx(1e10 ** (2 / 3))
    assert estimate_iterations_levy(10, 1e-2, 100, 1.5) == pytest.approx(464.16, abs=0.01)


@given(
    st.floats(0.1, 100),
    st.floats(1e-6, 1e-2),
    st.integers(1, 500),
)
def test_levy_at_two_equals_gaussian(L, delta, d):
    assert estimate_iterations_levy(L, delta, d, 2.0) == pytest.approx(estimate_iterations_gaussian(L, delta, d))


def test_delta_must_be_below_scale():
    with pytest.raises(ValueError):
        estimate_iterations_gaussian(1.0, 1.0, 10)
    with pytest.raises(ValueError):
        estimate_iterations_levy(10, 1e-5, 100, 0.5)


def test_two_stage():
    two = estimate_two_stage(10, 1e-2, 1e-5, 100)
    assert (two.coarse, two.fine) == (pytest.approx(1e4), pytest.approx(1e4))
    lev = estimate_two_stage(10, 1e-2, 1e-5, 100, beta=1.5)
    assert lev.coarse == pytest.approx(464.16, abs=0.01)
    assert lev.fine == pytest.approx(464.16, abs=0.01)
    assert lev.total == pytest.approx(lev.coarse + lev.fine)


def test_reduction_table_rows():
    rows = dict(reduction_table(10, 1e-5, 100, beta=1.5, coarse_delta=1e-2))
    assert rows["gaussian"] == pytest.approx(1e10)
    assert rows["levy"] == pytest.approx(4.6416e6, rel=1e-4)
    assert rows["es_total"] == pytest.approx(2e4)
    assert rows["es_levy_stage1"] == pytest.approx(464.16, abs=0.01)
    only = reduction_table(10, 1e-2, 100)
    assert only == [("gaussian", pytest.approx(1e4))]


def test_fit_power_law_exact():
    t = np.arange(1, 50, dtype=float)
    slope, r2 = fit_power_law(t, 3.0 * t**1.7)
    assert slope == pytest.approx(1.7)
    assert r2 == pytest.approx(1.0)


def test_walk_spec_validation():
    with pytest.raises(ValueError):
        WalkSpec(kind="levy")
    with pytest.raises(ValueError):
        WalkSpec(kind="levy", levy_index=0.8)
    with pytest.raises(ValueError):
        WalkSpec(dim=2, drift=(1.0,))
    assert WalkSpec(kind="brownian").kind is WalkKind.BROWNIAN


def test_brownian_exponent():
    stats = simulate_walk_variance(WalkSpec(steps=1000, trials=10_000), rng_stream(7))
    assert abs(stats.fitted_exponent - 1.0) <= 0.1


def test_brownian_variance_level():
    # E|S_t|^2 = t for unit Gaussian steps in one dimension
    stats = simulate_walk_variance(WalkSpec(steps=200, trials=5000), rng_stream(8))
    assert stats.empirical_variance[-1] == pytest.approx(200.0, rel=0.05)


def test_drift_exponent():
    stats = simulate_walk_variance(WalkSpec(steps=1000, trials=2000, drift=(1.0,)), rng_stream(7))
    assert abs(stats.fitted_exponent - 2.0) <= 0.1


def test_levy_exponents():
    s15 = simulate_walk_variance(WalkSpec(kind="levy", levy_index=1.5, trials=10_000), rng_stream(7))
    assert abs(s15.fitted_exponent - 1.5) <= 0.2
    s20 = simulate_walk_variance(WalkSpec(kind="levy", levy_index=2.0, trials=10_000), rng_stream(7))
    assert abs(s20.fitted_exponent - 1.0) <= 0.1


def test_walk_is_deterministic(tmp_path):
    spec = WalkSpec(steps=50, trials=100)
    a = simulate_walk_variance(spec, rng_stream(3))
    b = simulate_walk_variance(spec, rng_stream(3))
    np.testing.assert_array_equal(a.empirical_variance, b.empirical_variance)
    a.to_csv(tmp_path / "w.csv")
    lines = (tmp_path / "w.csv").read_text().splitlines()
    assert lines[0] == "t,variance,trials"
    assert len(lines) == 51
