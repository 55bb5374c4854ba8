import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from eaglestrat.benchmarks import (
    PidRequirementSpec,
    catalog,
    get_problem,
    heat_exchanger,
    pid_problem,
    pressure_vessel,
    speed_reducer,
    sphere,
)
from eaglestrat.controlsim import EAGLE_PID, ZIEGLER_NICHOLS_PID
from eaglestrat.problem import FEASIBILITY_TOLERANCE, evaluate

VESSEL_X = (0.8125, 0.4375, 42.0984, 176.6366)
REDUCER_CAGNINA = (3.5, 0.7, 17, 7.3, 7.8, 3.350214, 5.286683)
REDUCER_ES = (3.5, 0.7, 17, 7.3, 7.8, 3.34336449, 5.285351)
HE_X = (579.30675, 1359.97076, 5109.97052, 182.01770, 295.60118, 217.98230, 286.41653, 395.60118)


def test_vessel_objective():
    c = evaluate(pressure_vessel(), VESSEL_X)
    assert c.objective_value == pytest.approx(6059.714, rel=1e-4)


def test_vessel_g1_near_active():
    g = pressure_vessel().constraint_values(VESSEL_X)
    assert g[0] == pytest.approx(-0.8125 + 0.0193 * 42.0984)
    assert -1e-4 < g[0] <= 0


def test_vessel_g4_boundary():
    p = pressure_vessel()
    assert p.constraints[3](np.array([1.0, 1.0, 50.0, 240.0])) == 0.0


def test_vessel_small_corner_infeasible():
    c = evaluate(pressure_vessel(), (0.0625, 0.0625, 10, 10))
    assert c.violation > 1e6


def test_reducer_objectives():
    p = speed_reducer()
    assert evaluate(p, REDUCER_CAGNINA).objective_value == pytest.approx(2996.348165, rel=1e-6)
    assert evaluate(p, REDUCER_ES).objective_value == pytest.approx(2993.7495888, rel=1e-6)


def test_reducer_g7():
    x = np.array(REDUCER_CAGNINA, float)
    assert speed_reducer().constraints[6](x) == pytest.approx(0.7 * 17 / 40 - 1)


def test_reducer_integer_teeth():
    c = evaluate(speed_reducer(), (3.5, 0.7, 17.4, 7.3, 7.8, 3.35, 5.29))
    assert c.position[2] == 17.0


@given(st.lists(st.floats(100, 1000), min_size=8, max_size=8))
def test_heat_exchanger_objective_is_linear(x):
    x[1] = max(x[1], 1000.0)
    x[2] = max(x[2], 1000.0)
    x[3:] = [min(v, 1000.0) for v in x[3:]]
    assert evaluate(heat_exchanger(), x).objective_value == x[0] + x[1] + x[2]


def test_heat_exchanger_g3():
    x = np.array(HE_X)
    x[7] = x[4]
    assert heat_exchanger().constraints[2](x) == -1.0


def test_heat_exchanger_objective_at_reported_point():
    assert evaluate(heat_exchanger(), HE_X).objective_value == pytest.approx(7049.248, rel=1e-5)


def test_heat_exchanger_classical_accepts_reported_point():
    c = evaluate(heat_exchanger(classical=True), HE_X)
    assert c.violation < 1e-2


def test_pid_problem_designs():
    p = pid_problem()
    es = evaluate(p, (EAGLE_PID.kp, EAGLE_PID.ti, EAGLE_PID.td))
    zn = evaluate(p, (ZIEGLER_NICHOLS_PID.kp, ZIEGLER_NICHOLS_PID.ti, ZIEGLER_NICHOLS_PID.td))
    assert es.feasible
    assert not zn.feasible
    # the classical tuning settles in time but rises too slowly and overshoots
    g = p.constraint_values((ZIEGLER_NICHOLS_PID.kp, ZIEGLER_NICHOLS_PID.ti, ZIEGLER_NICHOLS_PID.td))
    assert g[0] > 0 and g[1] < 0 and g[2] > 0


def test_pid_zero_gain_violates_rise():
    c = evaluate(pid_problem(), (0.0, 1.0, 0.0))
    assert not c.feasible
    assert c.objective_value >= 1e5


def test_pid_spec_bounds():
    p = pid_problem(PidRequirementSpec(upper=(1.0, 5.0, 2.0)))
    np.testing.assert_array_equal(p.upper, [1.0, 5.0, 2.0])


def test_sphere():
    assert evaluate(sphere(3), (1.0, 2.0, 2.0)).objective_value == 9.0


def test_catalog_best_known_points_feasible():
    for name, entry in catalog().items():
        c = evaluate(entry.problem, entry.best_known.position)
        assert c.violation <= FEASIBILITY_TOLERANCE, name
        assert c.objective_value == entry.best_known.objective_value


def test_unknown_problem():
    with pytest.raises(KeyError):
        get_problem("nope")
