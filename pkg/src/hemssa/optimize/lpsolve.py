# -*- coding: utf-8 -*-
"""Small dense linear programs with bounded variables.

Problems have the form::

    minimise    cost · x
    subject to  a_eq @ x == b_eq
                lower <= x <= upper

Two backends solve them. ``SIMPLEX`` is a two-phase primal simplex that keeps
nonbasic variables at one of their bounds and pivots with Bland's rule, so it
terminates on degenerate problems. ``HIGHS`` delegates to
``scipy.optimize.linprog`` and is mostly useful as a cross-check.
"""

import dataclasses
import enum

import numpy as np
from scipy import optimize as sp_optimize

from hemssa.optimize import opterror

# Primal feasibility (Wh scale values).
FEASIBILITY_TOL = 1e-6
# Reduced cost optimality.
OPTIMALITY_TOL = 1e-9

_PIVOT_TOL = 1e-9
_RATIO_TIE_TOL = 1e-12
_DEFAULT_MAX_ITERATIONS = 20_000


@enum.unique
class Backend(enum.StrEnum):
    """LP solver implementation."""

    SIMPLEX = "simplex"
    HIGHS = "highs"


@dataclasses.dataclass(frozen=True)
class LinearProgram:
    """Equality-constrained LP with per-variable bounds.

    :field cost: Objective coefficients, shape ``(n,)``.
    :field a_eq: Constraint matrix, shape ``(m, n)``.
    :field b_eq: Constraint right hand side, shape ``(m,)``.
    :field lower: Finite lower bounds, shape ``(n,)``.
    :field upper: Upper bounds, shape ``(n,)``, may contain ``inf``.
    """

    cost: np.ndarray
    a_eq: np.ndarray
    b_eq: np.ndarray
    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self) -> None:
        m, n = self.a_eq.shape
        for name, arr, size in (
            ("cost", self.cost, n),
            ("b_eq", self.b_eq, m),
            ("lower", self.lower, n),
            ("upper", self.upper, n),
        ):
            if arr.shape != (size,):
                raise ValueError(f"{name} has shape {arr.shape}, want ({size},)")
        if not np.all(np.isfinite(self.lower)):
            raise ValueError("lower bounds must be finite")

    @property
    def num_variables(self) -> int:
        """Number of variables."""
        return self.a_eq.shape[1]

    @property
    def num_constraints(self) -> int:
        """Number of equality constraints."""
        return self.a_eq.shape[0]


@dataclasses.dataclass(frozen=True)
class LPSolution:
    """Optimal point of a LinearProgram."""

    x: np.ndarray
    objective: float
    iterations: int


class _BoundedSimplex:
    """Tableau state of the two-phase bounded-variable simplex.

    Columns ``0..n-1`` are the problem variables, ``n..n+m-1`` are phase one
    artificials. Rows are sign-flipped so every artificial starts at the
    absolute value of its row residual.
    """

    def __init__(self, lp: LinearProgram, max_iterations: int) -> None:
        m, n = lp.a_eq.shape
        self._m = m
        self._n = n
        self._max_iterations = max_iterations
        self.iterations = 0

        if np.any(lp.upper < lp.lower - FEASIBILITY_TOL):
            raise opterror.Infeasible("a variable has upper bound below its lower bound")

        x_struct = lp.lower.astype(np.float64)
        residual = lp.b_eq - lp.a_eq @ x_struct
        sign = np.where(residual < 0, -1.0, 1.0)

        self._matrix = np.hstack([lp.a_eq * sign[:, np.newaxis], np.eye(m)])
        self._rhs = lp.b_eq * sign
        self._lower = np.concatenate([lp.lower, np.zeros(m)])
        self._upper = np.concatenate([np.maximum(lp.upper, lp.lower), np.full(m, np.inf)])
        self._x = np.concatenate([x_struct, np.abs(residual)])
        self._basis = np.arange(n, n + m)
        self._is_basic = np.zeros(n + m, dtype=bool)
        self._is_basic[self._basis] = True
        self._at_upper = np.zeros(n + m, dtype=bool)
        # B^-1 @ matrix; the initial basis is the identity.
        self._tableau = self._matrix.copy()

    def _entering(self, reduced: np.ndarray) -> int | None:
        movable = ~self._is_basic & (self._upper - self._lower > FEASIBILITY_TOL)
        improving = np.where(self._at_upper, reduced > OPTIMALITY_TOL, reduced < -OPTIMALITY_TOL)
        candidates = np.flatnonzero(movable & improving)
        if candidates.size == 0:
            return None
        # Bland: lowest index.
        return int(candidates[0])

    def _pivot(self, row: int, col: int) -> None:
        t = self._tableau
        t[row] /= t[row, col]
        factors = t[:, col].copy()
        factors[row] = 0.0
        t -= np.outer(factors, t[row])
        self._is_basic[self._basis[row]] = False
        self._basis[row] = col
        self._is_basic[col] = True
        self._at_upper[col] = False

    def _step(self, col: int) -> None:
        # +1 increases the entering variable from its lower bound, -1 decreases
        # it from its upper bound.
        sigma = -1.0 if self._at_upper[col] else 1.0
        alpha = sigma * self._tableau[:, col]
        basis = self._basis
        xb = self._x[basis]
        lb = self._lower[basis]
        ub = self._upper[basis]

        limits = np.full(self._m, np.inf)
        dec = alpha > _PIVOT_TOL
        limits[dec] = (xb[dec] - lb[dec]) / alpha[dec]
        inc = (alpha < -_PIVOT_TOL) & np.isfinite(ub)
        limits[inc] = (ub[inc] - xb[inc]) / -alpha[inc]
        np.maximum(limits, 0.0, out=limits)

        t_flip = self._upper[col] - self._lower[col]
        t_ratio = limits.min() if self._m else np.inf
        if not np.isfinite(t_flip) and not np.isfinite(t_ratio):
            raise opterror.Unbounded(f"variable {col} can decrease the objective without limit")

        if t_flip <= t_ratio:
            self._x[basis] = xb - t_flip * alpha
            self._at_upper[col] = not self._at_upper[col]
            self._x[col] = self._upper[col] if self._at_upper[col] else self._lower[col]
            return

        ties = np.flatnonzero(limits <= t_ratio + _RATIO_TIE_TOL)
        # Bland: lowest variable index among the tied rows.
        row = int(ties[np.argmin(basis[ties])])
        leaving = int(basis[row])
        leaves_at_upper = bool(alpha[row] < 0)

        self._x[basis] = xb - t_ratio * alpha
        self._x[col] += sigma * t_ratio
        self._pivot(row, col)
        self._at_upper[leaving] = leaves_at_upper
        self._x[leaving] = self._upper[leaving] if leaves_at_upper else self._lower[leaving]

    def _optimise(self, cost: np.ndarray) -> None:
        while True:
            reduced = cost - cost[self._basis] @ self._tableau
            col = self._entering(reduced)
            if col is None:
                return
            if self.iterations >= self._max_iterations:
                raise opterror.SolverFailure(
                    f"simplex did not converge within {self._max_iterations} iterations"
                )
            self.iterations += 1
            self._step(col)

    def _drive_out_artificials(self) -> None:
        n = self._n
        for row in range(self._m):
            if self._basis[row] < n:
                continue
            candidates = np.flatnonzero(
                ~self._is_basic[:n] & (np.abs(self._tableau[row, :n]) > _PIVOT_TOL)
            )
            if candidates.size == 0:
                # Redundant row; the artificial stays basic at zero.
                continue
            artificial = int(self._basis[row])
            self._pivot(row, int(candidates[0]))
            self._x[artificial] = 0.0
        # Artificials may no longer move.
        self._upper[n:] = 0.0
        self._at_upper[n:] = False

    def solve(self, cost: np.ndarray) -> np.ndarray:
        """Runs both phases and returns the structural part of the optimum."""
        n, m = self._n, self._m
        phase_one = np.concatenate([np.zeros(n), np.ones(m)])
        self._optimise(phase_one)
        infeasibility = float(self._x[n:].sum())
        scale = max(1.0, float(np.abs(self._rhs).max(initial=0.0)))
        if infeasibility > FEASIBILITY_TOL * scale:
            raise opterror.Infeasible(f"phase one ended with infeasibility {infeasibility:g}")
        self._drive_out_artificials()

        self._optimise(np.concatenate([cost, np.zeros(m)]))
        self._refresh_basic_values()
        x = self._x[:n]
        return np.clip(x, self._lower[:n], self._upper[:n])

    def _refresh_basic_values(self) -> None:
        # Removes drift accumulated over many tableau updates.
        if self._m == 0:
            return
        nonbasic = ~self._is_basic
        rhs = self._rhs - self._matrix[:, nonbasic] @ self._x[nonbasic]
        try:
            self._x[self._basis] = np.linalg.solve(self._matrix[:, self._basis], rhs)
        except np.linalg.LinAlgError as exc:
            raise opterror.SolverFailure(f"final basis is singular: {exc}") from exc


def _solve_simplex(lp: LinearProgram, max_iterations: int) -> LPSolution:
    state = _BoundedSimplex(lp, max_iterations)
    x = state.solve(lp.cost)
    return LPSolution(x=x, objective=float(lp.cost @ x), iterations=state.iterations)


def _solve_highs(lp: LinearProgram, max_iterations: int) -> LPSolution:
    bounds = [
        (float(lo), None if np.isinf(hi) else float(hi)) for lo, hi in zip(lp.lower, lp.upper)
    ]
    res = sp_optimize.linprog(
        c=lp.cost,
        A_eq=lp.a_eq,
        b_eq=lp.b_eq,
        bounds=bounds,
        method="highs",
        options={"maxiter": max_iterations},
    )
    match res.status:
        case 0:
            x = np.clip(np.asarray(res.x, dtype=np.float64), lp.lower, lp.upper)
            return LPSolution(x=x, objective=float(lp.cost @ x), iterations=int(res.nit))
        case 2:
            raise opterror.Infeasible(res.message)
        case 3:
            raise opterror.Unbounded(res.message)
        case _:
            raise opterror.SolverFailure(f"HiGHS status {res.status}: {res.message}")


def solve(
    lp: LinearProgram,
    backend: Backend = Backend.SIMPLEX,
    max_iterations: int = _DEFAULT_MAX_ITERATIONS,
) -> LPSolution:
    """Solves ``lp`` to optimality.

    :param lp: Problem to solve.
    :param backend: Solver implementation.
    :param max_iterations: Pivot limit.
    :raises opterror.Infeasible: No point satisfies the constraints.
    :raises opterror.Unbounded: The objective has no lower bound.
    :raises opterror.SolverFailure: The iteration limit was hit or the basis
    became singular.
    :return: An optimal point.
    """
    match backend:
        case Backend.SIMPLEX:
            return _solve_simplex(lp, max_iterations)
        case Backend.HIGHS:
            return _solve_highs(lp, max_iterations)
        case _:
            raise ValueError(backend)
