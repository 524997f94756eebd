# -*- coding: utf-8 -*-
# pylint: disable=missing-class-docstring,missing-function-docstring,missing-module-docstring

import math

import numpy as np
import pytest
from pytest_subtests import SubTests

from hemssa.sensitivity import testfunctions


@pytest.mark.parametrize(
    "b,expected",
    [
        (0.1, 5.882132),
        (0.05, 5.840058),
    ],
)
def test_ishigami_value(b: float, expected: float) -> None:
    actual = testfunctions.ishigami(np.array([[1.0, 1.0, 1.0]]), a=7.0, b=b)
    assert actual[0] == pytest.approx(expected, abs=1e-6)


def test_ishigami_analytic_indices() -> None:
    bench = testfunctions.ishigami_benchmark()
    np.testing.assert_allclose(bench.first_order, [0.3139, 0.4424, 0.0], atol=1e-4)
    np.testing.assert_allclose(bench.total_order, [0.5576, 0.4424, 0.2437], atol=1e-4)
    assert bench.second_order[0, 2] == pytest.approx(0.2437, abs=1e-4)
    assert bench.d == 3


def test_ishigami_unit_mapping() -> None:
    bench = testfunctions.ishigami_benchmark()
    centre = bench.evaluate(np.array([[0.5, 0.5, 0.5]]))
    assert centre[0] == pytest.approx(0.0, abs=1e-12)
    quarter = bench.evaluate(np.array([[0.75, 0.75, 0.5]]))
    assert quarter[0] == pytest.approx(math.sin(math.pi / 2) + 7.0, abs=1e-12)


def test_linear_benchmark_estimate() -> None:
    result = testfunctions.estimate_benchmark(testfunctions.linear_benchmark(), 1024)
    np.testing.assert_allclose(result.first_order, [0.2, 0.8], atol=0.02)
    np.testing.assert_allclose(result.total_order, [0.2, 0.8], atol=0.02)
    assert result.output_variance == pytest.approx(5.0 / 12.0, rel=0.02)


def test_ishigami_estimate_converges() -> None:
    bench = testfunctions.ishigami_benchmark()
    result = testfunctions.estimate_benchmark(bench, 8192)
    np.testing.assert_allclose(result.first_order, bench.first_order, atol=0.03)
    np.testing.assert_allclose(result.total_order, bench.total_order, atol=0.03)


def test_run_checks_pass(subtests: SubTests) -> None:
    checks = testfunctions.run_checks(4096)
    assert {c.benchmark for c in checks} == {"linear", "ishigami"}
    # Linear: S1, S2, ST1, ST2, S12. Ishigami: three first and three total.
    assert len(checks) == 11
    for check in checks:
        with subtests.test(benchmark=check.benchmark, index=check.index):
            assert check.passed, check


def test_check_passed() -> None:
    check = testfunctions.Check("f", "S1", estimate=0.51, expected=0.5, tolerance=0.02)
    assert check.passed
    assert not testfunctions.Check("f", "S1", estimate=0.53, expected=0.5, tolerance=0.02).passed
