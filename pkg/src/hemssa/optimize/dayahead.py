# -*- coding: utf-8 -*-
"""Day-ahead battery schedule that minimises the household's grid cost.

Each hour ``h`` the household buys ``Q_h`` Wh, sells a fraction ``p_h`` of the
forecast generation and moves ``B_h`` Wh into (``B_h > 0``) or out of
(``B_h < 0``) the battery. Energy bought plus energy produced balances
consumption plus energy sold plus battery charge.

Charging and discharging are modelled as separate non-negative flows so the
problem stays linear. An optimal point never profits from doing both in the
same hour, but degenerate optima can; those hours are collapsed to a single
net flow afterwards.
"""

import dataclasses
from typing import Any

import numpy as np

from hemssa import profiles
from hemssa.optimize import lpsolve, opterror

HOURS = profiles.HOURS

# Wh tolerance for plan invariants.
ENERGY_TOL = 1e-6


@dataclasses.dataclass(frozen=True)
class BatterySpec:
    """Battery characteristics.

    :field capacity: Usable capacity (Wh).
    :field max_charge: Maximum energy drawn from the bus per hour (Wh).
    :field max_discharge: Maximum energy released per hour (Wh).
    :field efficiency: Fraction of the drawn energy that is stored, in (0, 1].
    :field initial_energy: Stored energy at the start of the day (Wh).
    """

    capacity: float
    max_charge: float = 5000.0
    max_discharge: float = 5000.0
    efficiency: float = 0.95
    initial_energy: float = 0.0

    def __post_init__(self) -> None:
        if not self.capacity >= 0:
            raise ValueError(f"battery capacity must be non-negative, got {self.capacity}")
        if not self.max_charge >= 0:
            raise ValueError(f"max charge must be non-negative, got {self.max_charge}")
        if not self.max_discharge >= 0:
            raise ValueError(f"max discharge must be non-negative, got {self.max_discharge}")
        if not 0 < self.efficiency <= 1:
            raise ValueError(f"efficiency must be in (0, 1], got {self.efficiency}")
        if not 0 <= self.initial_energy <= self.capacity:
            raise ValueError(
                f"initial energy {self.initial_energy} outside [0, capacity {self.capacity}]"
            )

    def with_capacity(self, capacity: float) -> "BatterySpec":
        """Returns the same battery with a different capacity.

        The initial energy is capped to the new capacity.
        """
        return dataclasses.replace(
            self,
            capacity=capacity,
            initial_energy=min(self.initial_energy, capacity),
        )

    def to_json_dict(self) -> dict[str, Any]:
        """Returns the battery as JSON-compatible data."""
        return dataclasses.asdict(self)


def battery_step(e_prev: float, rate: float, efficiency: float) -> float:
    """Stored energy after one hour with battery rate ``rate``.

    Charging stores ``efficiency * rate``; discharging removes ``-rate``.
    """
    if rate >= 0:
        return e_prev + efficiency * rate
    return e_prev + rate


@dataclasses.dataclass(frozen=True)
class HourDecision:
    """Planned operation for one hour.

    :field hour: 1-based hour.
    :field bought: Energy bought from the grid ``Q_h`` (Wh).
    :field sold_fraction: Fraction ``p_h`` of the forecast generation sold.
    :field sold: Energy sold ``p_h * P(h)`` (Wh).
    :field battery_rate: Battery rate ``B_h`` (Wh), positive when charging.
    :field energy: Stored energy at the end of the hour ``E_h`` (Wh).
    """

    hour: int
    bought: float
    sold_fraction: float
    sold: float
    battery_rate: float
    energy: float


@dataclasses.dataclass(frozen=True)
class DayAheadPlan:
    """Hourly decisions for the day and their cost under the forecast."""

    hours: tuple[HourDecision, ...]
    planned_cost: float

    @property
    def battery_rates(self) -> np.ndarray:
        """``B_h`` for each hour, 0-based."""
        return np.array([d.battery_rate for d in self.hours])

    @property
    def energies(self) -> np.ndarray:
        """``E_h`` for each hour, 0-based."""
        return np.array([d.energy for d in self.hours])

    @property
    def bought(self) -> np.ndarray:
        """``Q_h`` for each hour, 0-based."""
        return np.array([d.bought for d in self.hours])

    @property
    def sold(self) -> np.ndarray:
        """Energy sold for each hour, 0-based."""
        return np.array([d.sold for d in self.hours])

    def to_json_dict(self) -> dict[str, Any]:
        """Returns the plan as JSON-compatible data."""
        return {
            "planned_cost": self.planned_cost,
            "hours": [dataclasses.asdict(d) for d in self.hours],
        }


@dataclasses.dataclass(frozen=True)
class OptimizationProblem:
    """Inputs of one day-ahead optimization."""

    consumption: profiles.HourlyProfile
    forecast_generation: profiles.HourlyProfile
    pricing: profiles.PricingScheme
    battery: BatterySpec

    def __post_init__(self) -> None:
        self.consumption.require_kind(profiles.ProfileKind.CONSUMPTION)
        self.forecast_generation.require_kind(profiles.ProfileKind.GENERATION)


# Variable blocks of the LP, each HOURS wide.
_Q, _S, _C, _D, _E = range(5)
_NUM_BLOCKS = 5


def _var(block: int, i: int) -> int:
    return block * HOURS + i


def build_lp(problem: OptimizationProblem) -> lpsolve.LinearProgram:
    """Formulates ``problem`` as a LinearProgram.

    Variables per hour are energy bought, energy sold (at most the forecast
    generation), battery charge drawn, battery discharge released and stored
    energy. Discharge is capped by both the rate limit and the hour's
    consumption, so the battery never exports to the grid.
    """
    y = problem.consumption.as_array()
    p = problem.forecast_generation.as_array()
    buy = problem.pricing.buy.as_array()
    sell = problem.pricing.sell.as_array()
    bat = problem.battery

    n = _NUM_BLOCKS * HOURS
    a_eq = np.zeros((2 * HOURS, n))
    b_eq = np.zeros(2 * HOURS)
    for i in range(HOURS):
        # Q - C + D - S = Y - P
        a_eq[i, _var(_Q, i)] = 1.0
        a_eq[i, _var(_C, i)] = -1.0
        a_eq[i, _var(_D, i)] = 1.0
        a_eq[i, _var(_S, i)] = -1.0
        b_eq[i] = y[i] - p[i]
        # E_i - E_{i-1} - eta C + D = 0
        row = HOURS + i
        a_eq[row, _var(_E, i)] = 1.0
        a_eq[row, _var(_C, i)] = -bat.efficiency
        a_eq[row, _var(_D, i)] = 1.0
        if i > 0:
            a_eq[row, _var(_E, i - 1)] = -1.0
        else:
            b_eq[row] = bat.initial_energy

    lower = np.zeros(n)
    upper = np.concatenate(
        [
            np.full(HOURS, np.inf),
            p,
            np.full(HOURS, bat.max_charge),
            np.minimum(bat.max_discharge, y),
            np.full(HOURS, bat.capacity),
        ]
    )
    cost = np.concatenate([buy / 1000.0, -sell / 1000.0, np.zeros(3 * HOURS)])
    return lpsolve.LinearProgram(cost=cost, a_eq=a_eq, b_eq=b_eq, lower=lower, upper=upper)


def _collapse_simultaneous(
    charge: np.ndarray,
    discharge: np.ndarray,
    efficiency: float,
) -> np.ndarray:
    """Returns net battery rates, replacing charge-and-discharge by one flow.

    The stored energy change ``efficiency * charge - discharge`` is preserved.
    """
    rates = np.empty(HOURS)
    for i in range(HOURS):
        c, d = float(charge[i]), float(discharge[i])
        if c > 0 and d > 0:
            net = efficiency * c - d
            rates[i] = net / efficiency if net >= 0 else net
        else:
            rates[i] = c - d
    return rates


def plan_from_rates(
    problem: OptimizationProblem,
    rates: np.ndarray,
    sold_hint: np.ndarray | None = None,
) -> DayAheadPlan:
    """Builds a plan from battery rates, filling grid flows from the balance.

    :param problem: Problem the rates were planned for.
    :param rates: Battery rate ``B_h`` per hour, 0-based.
    :param sold_hint: Energy to sell per hour. Without it, energy is sold only
    when generation exceeds consumption plus charge. Purchases never go
    negative; where the hint would require that, less is sold.
    :return: Plan whose flows satisfy the energy balance exactly.
    """
    y = problem.consumption.as_array()
    p = problem.forecast_generation.as_array()
    bat = problem.battery

    decisions = []
    energy = bat.initial_energy
    for i in range(HOURS):
        rate = float(rates[i])
        energy = min(max(battery_step(energy, rate, bat.efficiency), 0.0), bat.capacity)
        net = y[i] + rate - p[i]
        if sold_hint is None:
            sold = min(max(-net, 0.0), p[i])
        else:
            sold = min(max(float(sold_hint[i]), 0.0), p[i])
            if net + sold < 0:
                sold = min(-net, p[i])
        bought = max(net + sold, 0.0)
        decisions.append(
            HourDecision(
                hour=i + 1,
                bought=float(bought),
                sold_fraction=float(sold / p[i]) if p[i] > 0 else 0.0,
                sold=float(sold),
                battery_rate=rate,
                energy=float(energy),
            )
        )
    hours = tuple(decisions)
    return DayAheadPlan(
        hours=hours,
        planned_cost=_hours_cost(hours, problem.pricing, problem.forecast_generation),
    )


def _hours_cost(
    hours: tuple[HourDecision, ...],
    pricing: profiles.PricingScheme,
    generation: profiles.HourlyProfile,
) -> float:
    total = 0.0
    for d in hours:
        h = d.hour
        sold = d.sold_fraction * generation.at(h)
        total += d.bought * pricing.buy.at(h) - sold * pricing.sell.at(h)
    return total / 1000.0


def plan_cost(
    plan: DayAheadPlan,
    pricing: profiles.PricingScheme,
    generation: profiles.HourlyProfile,
) -> float:
    """Cost (€) of a plan under ``pricing``.

    Energy sold is the plan's sold fraction of ``generation``.
    """
    generation.require_kind(profiles.ProfileKind.GENERATION)
    return _hours_cost(plan.hours, pricing, generation)


def solve_day_ahead(
    problem: OptimizationProblem,
    backend: lpsolve.Backend = lpsolve.Backend.SIMPLEX,
) -> DayAheadPlan:
    """Finds the cost-minimal plan for the forecast day.

    :param problem: Consumption, forecast generation, prices and battery.
    :param backend: LP solver implementation.
    :raises opterror.SolverFailure: The solver failed to reach an optimum.
    :return: Optimal plan.
    """
    lp = build_lp(problem)
    try:
        solution = lpsolve.solve(lp, backend)
    except (opterror.Infeasible, opterror.Unbounded) as exc:
        # Doing nothing with the battery is always feasible and the objective
        # is bounded below by the sell value of all generation.
        raise opterror.SolverFailure(f"day-ahead LP reported {exc!r}") from exc

    x = solution.x
    rates = _collapse_simultaneous(
        x[_C * HOURS : (_C + 1) * HOURS],
        x[_D * HOURS : (_D + 1) * HOURS],
        problem.battery.efficiency,
    )
    return plan_from_rates(problem, rates, sold_hint=x[_S * HOURS : (_S + 1) * HOURS])


def plan_violations(
    plan: DayAheadPlan,
    problem: OptimizationProblem,
    tol: float = ENERGY_TOL,
) -> list[str]:
    """Lists the ways ``plan`` breaks the constraints of ``problem``.

    An empty list means the plan is feasible within ``tol`` Wh.
    """
    y = problem.consumption.as_array()
    p = problem.forecast_generation.as_array()
    bat = problem.battery
    problems: list[str] = []
    if len(plan.hours) != HOURS:
        return [f"plan has {len(plan.hours)} hours, want {HOURS}"]

    e_prev = bat.initial_energy
    for i, d in enumerate(plan.hours):
        h = i + 1
        balance = d.bought + p[i] - y[i] - d.sold - d.battery_rate
        if abs(balance) > tol:
            problems.append(f"hour {h}: energy balance off by {balance:g}")
        if d.bought < -tol:
            problems.append(f"hour {h}: negative purchase {d.bought:g}")
        if not -tol <= d.sold_fraction <= 1 + tol:
            problems.append(f"hour {h}: sold fraction {d.sold_fraction:g} outside [0, 1]")
        if not -bat.max_discharge - tol <= d.battery_rate <= bat.max_charge + tol:
            problems.append(f"hour {h}: battery rate {d.battery_rate:g} outside rate limits")
        if d.battery_rate < 0 and -d.battery_rate > y[i] + tol:
            problems.append(f"hour {h}: discharge {-d.battery_rate:g} exceeds consumption")
        expected = battery_step(e_prev, d.battery_rate, bat.efficiency)
        if abs(d.energy - expected) > tol:
            problems.append(f"hour {h}: stored energy {d.energy:g}, dynamics give {expected:g}")
        if not -tol <= d.energy <= bat.capacity + tol:
            problems.append(f"hour {h}: stored energy {d.energy:g} outside [0, capacity]")
        e_prev = d.energy
    return problems
