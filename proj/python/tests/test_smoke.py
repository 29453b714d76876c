import math

import pytest

import rapnc


def quad_fixture():
    return rapnc.Instance(
        sigma=[1, 2], a=[0, 4], b=[1, 4], c=[0, 0], d=[4, 4],
        objective="quadratic", w=[1, 1], t=[0, 0],
    )


def test_solve_integer_matches_oracle():
    ins = quad_fixture()
    x, val = rapnc.solve_integer(ins)
    ox, oval = rapnc.dp_solve(ins)
    assert x == [1.0, 3.0]
    assert val == pytest.approx(10.0)
    assert oval == pytest.approx(val)
    assert ox == x


def test_continuous_solution_is_feasible():
    ins = rapnc.gen_instance(n=200, m=60, seed=3, family="crash")
    ok, msg = rapnc.validate(ins)
    assert ok, msg
    x, val = rapnc.solve_continuous(ins, epsilon=1e-6)
    rep = rapnc.check_feasibility(ins, x)
    assert rep["all_zero"]
    assert math.isfinite(val)


def test_infeasible_instance_raises():
    ins = rapnc.Instance(
        sigma=[1], a=[6], b=[6], c=[0], d=[5], objective="linear", p=[1]
    )
    with pytest.raises(rapnc.InfeasibleError):
        rapnc.solve_integer(ins)


def test_lot_sizing_reduction_round_trip():
    ins, offset = rapnc.lot_sizing_to_instance(
        n=2, demand=[1, 1], initial_inventory=0, inventory_cap=[1, 1],
        production_cap=[2, 2], holding_cost=[0, 0],
        cost_kind="linear", p=[1, 2],
    )
    assert ins.n == 3
    _, val = rapnc.solve_integer(ins)
    assert val + offset == pytest.approx(3.0)  # produce [2, 1] per period


def test_speed_reduction_solves():
    ins = rapnc.speed_opt_to_instance(
        n=1, leg_length=[10], window_lo=[2], window_hi=[3],
        v_min=0, v_max=10, fuel_price=[1], v_opt=[0],
    )
    x, _ = rapnc.solve_continuous(ins)
    assert 2 - 1e-9 <= x[0] <= 3 + 1e-9


def test_svorex_training_predicts_classes():
    x, labels = rapnc.make_synthetic_ordinal(n=60, dim=1, r=3, noise=0.1, seed=7)
    model = rapnc.svorex_train(x, labels, C=10.0, width=1.0)
    assert model.converged
    assert len(model.thresholds) == 2
    errors = sum(1 for xi, yi in zip(x, labels) if model.predict(xi) != yi)
    assert errors < len(labels) // 5
