# -*- coding: utf-8 -*-
# pylint: disable=missing-class-docstring,missing-function-docstring,missing-module-docstring

import numpy as np
import pytest

from hemssa.optimize import lpsolve, opterror

BACKENDS = [lpsolve.Backend.SIMPLEX, lpsolve.Backend.HIGHS]


def _lp(cost, a_eq, b_eq, lower, upper) -> lpsolve.LinearProgram:
    return lpsolve.LinearProgram(
        cost=np.asarray(cost, dtype=np.float64),
        a_eq=np.asarray(a_eq, dtype=np.float64).reshape(len(b_eq), len(cost)),
        b_eq=np.asarray(b_eq, dtype=np.float64),
        lower=np.asarray(lower, dtype=np.float64),
        upper=np.asarray(upper, dtype=np.float64),
    )


@pytest.mark.parametrize("backend", BACKENDS)
def test_solve_bounded(backend: lpsolve.Backend) -> None:
    # max x1 + 2 x2 with x1 + x2 + slack = 4, x1, x2 <= 3.
    lp = _lp(
        cost=[-1.0, -2.0, 0.0],
        a_eq=[[1.0, 1.0, 1.0]],
        b_eq=[4.0],
        lower=[0.0, 0.0, 0.0],
        upper=[3.0, 3.0, np.inf],
    )
    actual = lpsolve.solve(lp, backend)
    assert actual.objective == pytest.approx(-7.0)
    np.testing.assert_allclose(actual.x, [1.0, 3.0, 0.0], atol=1e-9)


@pytest.mark.parametrize("backend", BACKENDS)
def test_solve_negative_rhs(backend: lpsolve.Backend) -> None:
    # x1 - x2 = -2 forces x2 >= 2.
    lp = _lp(
        cost=[1.0, 1.0],
        a_eq=[[1.0, -1.0]],
        b_eq=[-2.0],
        lower=[0.0, 0.0],
        upper=[10.0, 10.0],
    )
    actual = lpsolve.solve(lp, backend)
    assert actual.objective == pytest.approx(2.0)
    np.testing.assert_allclose(actual.x, [0.0, 2.0], atol=1e-9)


@pytest.mark.parametrize("backend", BACKENDS)
def test_solve_nonzero_lower_bounds(backend: lpsolve.Backend) -> None:
    lp = _lp(
        cost=[1.0, -1.0],
        a_eq=[[1.0, 1.0]],
        b_eq=[5.0],
        lower=[1.0, 0.5],
        upper=[np.inf, 3.0],
    )
    actual = lpsolve.solve(lp, backend)
    np.testing.assert_allclose(actual.x, [2.0, 3.0], atol=1e-9)


def test_solve_degenerate_cycling_example() -> None:
    # Classic problem on which the largest-coefficient rule cycles.
    lp = _lp(
        cost=[0.0, 0.0, 0.0, -0.75, 150.0, -0.02, 6.0],
        a_eq=[
            [1.0, 0.0, 0.0, 0.25, -60.0, -0.04, 9.0],
            [0.0, 1.0, 0.0, 0.5, -90.0, -0.02, 3.0],
            [0.0, 0.0, 1.0, 0.0, 0.0, 1.0, 0.0],
        ],
        b_eq=[0.0, 0.0, 1.0],
        lower=[0.0] * 7,
        upper=[np.inf] * 7,
    )
    actual = lpsolve.solve(lp, lpsolve.Backend.SIMPLEX)
    assert actual.objective == pytest.approx(-0.05)
    np.testing.assert_allclose(lp.a_eq @ actual.x, lp.b_eq, atol=1e-9)


def test_solve_redundant_rows() -> None:
    lp = _lp(
        cost=[1.0, 2.0],
        a_eq=[[1.0, 1.0], [2.0, 2.0]],
        b_eq=[3.0, 6.0],
        lower=[0.0, 0.0],
        upper=[np.inf, np.inf],
    )
    actual = lpsolve.solve(lp, lpsolve.Backend.SIMPLEX)
    assert actual.objective == pytest.approx(3.0)


@pytest.mark.parametrize("backend", BACKENDS)
def test_solve_infeasible(backend: lpsolve.Backend) -> None:
    lp = _lp(
        cost=[1.0, 1.0],
        a_eq=[[1.0, 1.0]],
        b_eq=[10.0],
        lower=[0.0, 0.0],
        upper=[3.0, 3.0],
    )
    with pytest.raises(opterror.Infeasible):
        lpsolve.solve(lp, backend)


def test_solve_crossed_bounds() -> None:
    lp = _lp(cost=[1.0], a_eq=[[1.0]], b_eq=[1.0], lower=[2.0], upper=[1.0])
    with pytest.raises(opterror.Infeasible):
        lpsolve.solve(lp, lpsolve.Backend.SIMPLEX)


@pytest.mark.parametrize("backend", BACKENDS)
def test_solve_unbounded(backend: lpsolve.Backend) -> None:
    lp = _lp(
        cost=[-1.0, 0.0],
        a_eq=[[1.0, -1.0]],
        b_eq=[0.0],
        lower=[0.0, 0.0],
        upper=[np.inf, np.inf],
    )
    with pytest.raises(opterror.Unbounded):
        lpsolve.solve(lp, backend)


def test_solve_iteration_limit() -> None:
    lp = _lp(
        cost=[-1.0, -2.0, 0.0],
        a_eq=[[1.0, 1.0, 1.0]],
        b_eq=[4.0],
        lower=[0.0, 0.0, 0.0],
        upper=[3.0, 3.0, np.inf],
    )
    with pytest.raises(opterror.SolverFailure):
        lpsolve.solve(lp, lpsolve.Backend.SIMPLEX, max_iterations=0)


@pytest.mark.parametrize("seed", range(5))
def test_simplex_matches_highs(seed: int) -> None:
    rng = np.random.default_rng(seed)
    m, n = 6, 14
    a_eq = rng.uniform(-1.0, 1.0, size=(m, n))
    upper = rng.uniform(1.0, 5.0, size=n)
    x0 = rng.uniform(0.0, 1.0, size=n) * upper
    lp = lpsolve.LinearProgram(
        cost=rng.uniform(-1.0, 1.0, size=n),
        a_eq=a_eq,
        b_eq=a_eq @ x0,
        lower=np.zeros(n),
        upper=upper,
    )
    simplex = lpsolve.solve(lp, lpsolve.Backend.SIMPLEX)
    highs = lpsolve.solve(lp, lpsolve.Backend.HIGHS)
    assert simplex.objective == pytest.approx(highs.objective, abs=1e-7)
    np.testing.assert_allclose(a_eq @ simplex.x, lp.b_eq, atol=1e-7)
    assert np.all(simplex.x >= -1e-9)
    assert np.all(simplex.x <= upper + 1e-9)


def test_linear_program_shape_checks() -> None:
    with pytest.raises(ValueError):
        _lp(cost=[1.0, 1.0], a_eq=[[1.0, 1.0]], b_eq=[1.0], lower=[0.0], upper=[1.0, 1.0])
    with pytest.raises(ValueError):
        _lp(
            cost=[1.0],
            a_eq=[[1.0]],
            b_eq=[1.0],
            lower=[-np.inf],
            upper=[1.0],
        )
    lp = _lp(cost=[1.0, 1.0], a_eq=[[1.0, 1.0]], b_eq=[1.0], lower=[0.0, 0.0], upper=[1.0, 1.0])
    assert lp.num_variables == 2
    assert lp.num_constraints == 1
