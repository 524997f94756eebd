# -*- coding: utf-8 -*-
"""Maps unit-cube samples to household days and prices them.

A scenario perturbs the irradiance of each hour in a window around its mean
and draws a battery capacity from a class range. The black-box model plans
the day against the mean forecast, then executes the plan against the
scenario's generation.
"""

import dataclasses
import enum

import cachetools
import numpy as np

from hemssa import dispatch, profiles
from hemssa.optimize import dayahead, lpsolve

CAPACITY_LABEL = "capacity"
_DEFAULT_PLAN_CACHE_SIZE = 4096


@enum.unique
class EvaluationMode(enum.StrEnum):
    """How the household reacts to the scenario's generation."""

    # Plan against the mean forecast, execute against the scenario.
    FIXED_PLAN = "fixed-plan"
    # Plan with perfect knowledge of the scenario.
    REPLAN = "replan"


@dataclasses.dataclass(frozen=True)
class HourWindow:
    """Inclusive range of 1-based hours with uncertain irradiance."""

    first: int
    last: int

    def __post_init__(self) -> None:
        if not 1 <= self.first <= self.last <= profiles.HOURS:
            raise ValueError(
                f"hour window [{self.first}, {self.last}] outside 1..{profiles.HOURS}"
            )

    def __len__(self) -> int:
        return self.last - self.first + 1

    @property
    def hours(self) -> range:
        """The hours of the window."""
        return range(self.first, self.last + 1)

    @property
    def slice(self) -> slice:
        """0-based slice of a 24-value array covering the window."""
        return slice(self.first - 1, self.last)

    def labels(self) -> tuple[str, ...]:
        """Input labels of the window hours followed by the capacity label."""
        return tuple(f"h{h:02d}" for h in self.hours) + (CAPACITY_LABEL,)


@dataclasses.dataclass(frozen=True)
class CapacityClass:
    """Range of battery capacities (Wh) sampled uniformly."""

    lo: float
    hi: float

    def __post_init__(self) -> None:
        if not 0 <= self.lo <= self.hi:
            raise ValueError(f"capacity class needs 0 <= lo <= hi, got [{self.lo}, {self.hi}]")

    @property
    def label(self) -> str:
        """Short label, e.g. ``5000-8000``."""
        return f"{self.lo:g}-{self.hi:g}"

    @property
    def midpoint(self) -> float:
        """Centre of the range."""
        return self.lo + (self.hi - self.lo) * 0.5


@dataclasses.dataclass(frozen=True)
class ScenarioVector:
    """Physical values of one design row.

    :field irradiance: Irradiance (W/m²) for each window hour.
    :field capacity: Battery capacity (Wh).
    """

    irradiance: tuple[float, ...]
    capacity: float


def map_unit_rows(
    u: np.ndarray,
    mean_irradiance: profiles.HourlyProfile,
    window: HourWindow,
    capacity_class: CapacityClass,
    error_halfwidth: float,
) -> tuple[np.ndarray, np.ndarray]:
    """Maps design rows to window irradiance and capacity.

    Each window hour ``j`` becomes ``max(0, mu_j * (1 - eps + 2 eps u_j))``
    and the last coordinate becomes ``lo + (hi - lo) u_d``.

    :param u: Rows in ``[0, 1]^d`` with ``d = len(window) + 1``.
    :param mean_irradiance: Irradiance the perturbation is centred on.
    :param window: Perturbed hours.
    :param capacity_class: Capacity range.
    :param error_halfwidth: Relative half-width ``eps`` of the perturbation.
    :return: ``(rows, len(window))`` irradiance and ``(rows,)`` capacities.
    """
    mean_irradiance.require_kind(profiles.ProfileKind.IRRADIANCE)
    u = np.atleast_2d(np.asarray(u, dtype=np.float64))
    d = len(window) + 1
    if u.shape[1] != d:
        raise ValueError(f"rows have {u.shape[1]} coordinates, want {d}")
    mu = mean_irradiance.as_array()[window.slice]
    eps = error_halfwidth
    irradiance = np.maximum(0.0, mu * (1.0 - eps + 2.0 * eps * u[:, :-1]))
    lo, hi = capacity_class.lo, capacity_class.hi
    capacity = lo + (hi - lo) * u[:, -1]
    return irradiance, capacity


def map_unit_to_scenario(
    u: np.ndarray,
    mean_irradiance: profiles.HourlyProfile,
    window: HourWindow,
    capacity_class: CapacityClass,
    error_halfwidth: float,
) -> ScenarioVector:
    """Maps a single point of the unit cube to a scenario.

    Same arithmetic as ``map_unit_rows``.
    """
    irradiance, capacity = map_unit_rows(
        u, mean_irradiance, window, capacity_class, error_halfwidth
    )
    return ScenarioVector(
        irradiance=tuple(float(v) for v in irradiance[0]),
        capacity=float(capacity[0]),
    )


class ScenarioModel:
    """Daily cost of a scenario for one household and forecast shift.

    In ``FIXED_PLAN`` mode the plan depends only on the capacity, so plans are
    kept in an LRU cache keyed by capacity.
    """

    consumption: profiles.HourlyProfile
    forecast_irradiance: profiles.HourlyProfile
    forecast_generation: profiles.HourlyProfile
    panel: profiles.PanelSpec
    pricing: profiles.PricingScheme
    battery: dayahead.BatterySpec
    window: HourWindow
    mode: EvaluationMode
    backend: lpsolve.Backend

    def __init__(  # pylint: disable=too-many-arguments
        self,
        *,
        consumption: profiles.HourlyProfile,
        forecast_irradiance: profiles.HourlyProfile,
        panel: profiles.PanelSpec,
        pricing: profiles.PricingScheme,
        battery: dayahead.BatterySpec,
        window: HourWindow,
        mode: EvaluationMode = EvaluationMode.FIXED_PLAN,
        backend: lpsolve.Backend = lpsolve.Backend.SIMPLEX,
        plan_cache_size: int = _DEFAULT_PLAN_CACHE_SIZE,
    ) -> None:
        """Initializer.

        :param consumption: Household consumption.
        :param forecast_irradiance: Mean irradiance, already shifted.
        :param panel: PV panel converting irradiance to generation.
        :param pricing: Grid prices.
        :param battery: Battery rates; the capacity comes from each scenario.
        :param window: Hours whose irradiance a scenario replaces.
        :param mode: Evaluation mode.
        :param backend: LP solver implementation.
        :param plan_cache_size: Number of plans kept per model.
        """
        forecast_irradiance.require_kind(profiles.ProfileKind.IRRADIANCE)
        self.consumption = consumption
        self.forecast_irradiance = forecast_irradiance
        self.forecast_generation = profiles.irradiance_to_power(forecast_irradiance, panel)
        self.panel = panel
        self.pricing = pricing
        self.battery = battery
        self.window = window
        self.mode = mode
        self.backend = backend
        self._plans: cachetools.LRUCache[float, dayahead.DayAheadPlan] = cachetools.LRUCache(
            maxsize=plan_cache_size
        )

    def _solve(
        self,
        battery: dayahead.BatterySpec,
        generation: profiles.HourlyProfile,
    ) -> dayahead.DayAheadPlan:
        problem = dayahead.OptimizationProblem(
            consumption=self.consumption,
            forecast_generation=generation,
            pricing=self.pricing,
            battery=battery,
        )
        return dayahead.solve_day_ahead(problem, self.backend)

    def plan_for(self, capacity: float) -> dayahead.DayAheadPlan:
        """Plan against the mean forecast for a battery of ``capacity`` Wh."""
        try:
            return self._plans[capacity]
        except KeyError:
            pass
        plan = self._solve(self.battery.with_capacity(capacity), self.forecast_generation)
        self._plans[capacity] = plan
        return plan

    def realized_generation(self, window_irradiance: np.ndarray) -> profiles.HourlyProfile:
        """Generation of a scenario; hours outside the window follow the forecast."""
        irr = self.forecast_irradiance.as_array()
        irr[self.window.slice] = window_irradiance
        return profiles.irradiance_to_power(
            profiles.HourlyProfile.of(profiles.ProfileKind.IRRADIANCE, irr), self.panel
        )

    def _cost(self, capacity: float, window_irradiance: np.ndarray) -> float:
        generation = self.realized_generation(window_irradiance)
        battery = self.battery.with_capacity(capacity)
        match self.mode:
            case EvaluationMode.FIXED_PLAN:
                outcome = dispatch.execute_plan(
                    self.plan_for(capacity), generation, self.consumption, self.pricing, battery
                )
                return outcome.realized_cost
            case EvaluationMode.REPLAN:
                return self._solve(battery, generation).planned_cost
            case _:
                raise ValueError(self.mode)

    def evaluate(self, scenario: ScenarioVector) -> float:
        """Daily cost (€) of ``scenario``."""
        return self._cost(scenario.capacity, np.asarray(scenario.irradiance))

    def evaluate_group(self, capacity: float, window_irradiance: np.ndarray) -> np.ndarray:
        """Daily costs of several scenarios sharing one capacity.

        :param capacity: Battery capacity (Wh).
        :param window_irradiance: ``(rows, len(window))`` irradiance.
        :return: ``(rows,)`` costs in row order.
        """
        return np.array([self._cost(capacity, row) for row in window_irradiance])
