# -*- coding: utf-8 -*-
# pylint: disable=missing-class-docstring,missing-function-docstring,missing-module-docstring

import numpy as np
import pytest
import testfixtures  # type: ignore[import-untyped]

from hemssa import dispatch, profiles
from hemssa.experiment import scenario
from hemssa.optimize import dayahead

IRRADIANCE = profiles.ProfileKind.IRRADIANCE
WINDOW = scenario.HourWindow(5, 19)
CLASS = scenario.CapacityClass(5000.0, 8000.0)
PRICING = profiles.PricingScheme.flat(profiles.REFERENCE_BUY_PRICE, profiles.REFERENCE_SELL_PRICE)


def _model(mode: scenario.EvaluationMode = scenario.EvaluationMode.FIXED_PLAN):
    return scenario.ScenarioModel(
        consumption=profiles.bundled_profile(profiles.ProfileKind.CONSUMPTION),
        forecast_irradiance=profiles.bundled_profile(IRRADIANCE),
        panel=profiles.DEFAULT_PANEL,
        pricing=PRICING,
        battery=dayahead.BatterySpec(capacity=0.0),
        window=WINDOW,
        mode=mode,
    )


def test_hour_window() -> None:
    assert len(WINDOW) == 15
    assert list(WINDOW.hours) == list(range(5, 20))
    assert np.arange(1, 25)[WINDOW.slice].tolist() == list(range(5, 20))
    labels = WINDOW.labels()
    assert len(labels) == 16
    testfixtures.compare(actual=labels[:2], expected=("h05", "h06"))
    assert labels[-2:] == ("h19", "capacity")
    with pytest.raises(ValueError):
        scenario.HourWindow(0, 5)
    with pytest.raises(ValueError):
        scenario.HourWindow(10, 9)


def test_capacity_class() -> None:
    assert CLASS.label == "5000-8000"
    assert CLASS.midpoint == 6500.0
    with pytest.raises(ValueError):
        scenario.CapacityClass(8000.0, 5000.0)


def test_map_centre_gives_mean() -> None:
    mean = profiles.bundled_profile(IRRADIANCE)
    u = np.full((1, 16), 0.5)
    s = scenario.map_unit_to_scenario(u, mean, WINDOW, CLASS, 0.3)
    testfixtures.compare(actual=s.irradiance, expected=mean.values[4:19])
    assert s.capacity == 6500.0


def test_map_extremes() -> None:
    mean = profiles.HourlyProfile.constant(IRRADIANCE, 800.0)
    ones = scenario.map_unit_to_scenario(np.ones(16), mean, WINDOW, CLASS, 0.3)
    zeros = scenario.map_unit_to_scenario(np.zeros(16), mean, WINDOW, CLASS, 0.3)
    assert ones.irradiance[0] == pytest.approx(1040.0)
    assert zeros.irradiance[0] == pytest.approx(560.0)
    assert ones.capacity == 8000.0
    assert zeros.capacity == 5000.0


def test_map_zero_mean_stays_zero() -> None:
    mean = profiles.HourlyProfile.constant(IRRADIANCE, 0.0)
    rows = np.random.default_rng(2).uniform(size=(5, 16))
    irradiance, _ = scenario.map_unit_rows(rows, mean, WINDOW, CLASS, 0.3)
    assert np.all(irradiance == 0.0)


def test_map_zero_halfwidth_ignores_irradiance_coordinates() -> None:
    mean = profiles.bundled_profile(IRRADIANCE)
    rows = np.random.default_rng(1).uniform(size=(10, 16))
    irradiance, _ = scenario.map_unit_rows(rows, mean, WINDOW, CLASS, 0.0)
    for row in irradiance:
        np.testing.assert_array_equal(row, mean.as_array()[WINDOW.slice])


def test_map_nonnegative_for_full_halfwidth() -> None:
    mean = profiles.bundled_profile(IRRADIANCE)
    irradiance, _ = scenario.map_unit_rows(np.zeros((1, 16)), mean, WINDOW, CLASS, 1.0)
    assert np.all(irradiance >= 0.0)


def test_map_wrong_width() -> None:
    with pytest.raises(ValueError):
        scenario.map_unit_rows(
            np.zeros((2, 15)), profiles.bundled_profile(IRRADIANCE), WINDOW, CLASS, 0.3
        )


def test_realized_generation_outside_window_follows_forecast() -> None:
    model = _model()
    generation = model.realized_generation(np.zeros(len(WINDOW)))
    factor = profiles.DEFAULT_PANEL.area * profiles.DEFAULT_PANEL.performance_ratio
    assert generation.at(4) == model.forecast_irradiance.at(4) * factor
    assert generation.at(20) == model.forecast_irradiance.at(20) * factor
    assert generation.at(12) == 0.0


def test_evaluate_mean_scenario_equals_planned_cost() -> None:
    model = _model()
    mean = model.forecast_irradiance
    s = scenario.map_unit_to_scenario(np.full(16, 0.5), mean, WINDOW, CLASS, 0.3)
    assert model.evaluate(s) == pytest.approx(model.plan_for(6500.0).planned_cost, abs=1e-6)


def test_evaluate_matches_dispatch() -> None:
    model = _model()
    irr = np.full(len(WINDOW), 300.0)
    s = scenario.ScenarioVector(irradiance=tuple(irr), capacity=7000.0)
    plan = model.plan_for(7000.0)
    outcome = dispatch.execute_plan(
        plan,
        model.realized_generation(irr),
        model.consumption,
        PRICING,
        model.battery.with_capacity(7000.0),
    )
    assert model.evaluate(s) == pytest.approx(outcome.realized_cost)


def test_plan_cache() -> None:
    model = _model()
    assert model.plan_for(6000.0) is model.plan_for(6000.0)


def test_evaluate_group_matches_evaluate() -> None:
    model = _model()
    rows = np.array([[400.0] * 15, [100.0] * 15, [700.0] * 15])
    actual = model.evaluate_group(6000.0, rows)
    expected = [
        model.evaluate(scenario.ScenarioVector(irradiance=tuple(r), capacity=6000.0)) for r in rows
    ]
    np.testing.assert_allclose(actual, expected)


def test_replan_never_costs_more_than_fixed_plan() -> None:
    fixed = _model(scenario.EvaluationMode.FIXED_PLAN)
    replan = _model(scenario.EvaluationMode.REPLAN)
    for level in [100.0, 400.0, 900.0]:
        s = scenario.ScenarioVector(irradiance=(level,) * 15, capacity=6000.0)
        assert replan.evaluate(s) <= fixed.evaluate(s) + 1e-6
