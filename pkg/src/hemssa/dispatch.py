# -*- coding: utf-8 -*-
"""Executes a day-ahead plan against the generation that actually occurred.

The battery follows the planned rates as far as its limits allow. The grid
absorbs whatever the battery cannot: any shortfall is bought, any surplus is
sold.
"""

import dataclasses
from typing import Any

from hemssa import profiles
from hemssa.optimize import dayahead


class Error(Exception):
    """Base exception emitted by dispatch."""


class PlanMismatch(Error, ValueError):
    """Plan horizon does not match the realized data."""


@dataclasses.dataclass(frozen=True)
class HourOutcome:
    """What happened during one hour.

    :field hour: 1-based hour.
    :field bought: Energy bought from the grid (Wh).
    :field sold: Energy sold to the grid (Wh).
    :field executed_battery_rate: Battery rate actually executed (Wh).
    :field energy: Stored energy at the end of the hour (Wh).
    """

    hour: int
    bought: float
    sold: float
    executed_battery_rate: float
    energy: float


@dataclasses.dataclass(frozen=True)
class RealizedOutcome:
    """Outcome of executing a plan over a day."""

    hours: tuple[HourOutcome, ...]
    realized_cost: float

    def to_json_dict(self) -> dict[str, Any]:
        """Returns the outcome as JSON-compatible data."""
        return {
            "realized_cost": self.realized_cost,
            "hours": [dataclasses.asdict(h) for h in self.hours],
        }


def execute_plan(
    plan: dayahead.DayAheadPlan,
    realized_generation: profiles.HourlyProfile,
    consumption: profiles.HourlyProfile,
    pricing: profiles.PricingScheme,
    battery: dayahead.BatterySpec,
) -> RealizedOutcome:
    """Replays ``plan``'s battery rates under the realized generation.

    Charging is limited by the rate limit and the remaining headroom,
    discharging by the rate limit, the stored energy and the hour's
    consumption. The remaining imbalance is settled with the grid at the
    hour's prices.

    :raises PlanMismatch: The plan does not cover exactly 24 hours.
    :return: Hourly outcome and the realized cost (€).
    """
    realized_generation.require_kind(profiles.ProfileKind.GENERATION)
    consumption.require_kind(profiles.ProfileKind.CONSUMPTION)
    if len(plan.hours) != profiles.HOURS:
        raise PlanMismatch(f"plan covers {len(plan.hours)} hours, want {profiles.HOURS}")

    energy = battery.initial_energy
    eta = battery.efficiency
    outcomes = []
    cost = 0.0
    for decision in plan.hours:
        h = decision.hour
        load = consumption.at(h)
        planned = decision.battery_rate
        if planned > 0:
            headroom = (battery.capacity - energy) / eta
            rate = max(0.0, min(planned, battery.max_charge, headroom))
            energy = min(dayahead.battery_step(energy, rate, eta), battery.capacity)
        elif planned < 0:
            released = max(0.0, min(-planned, battery.max_discharge, energy, load))
            rate = -released
            energy = max(dayahead.battery_step(energy, rate, eta), 0.0)
        else:
            rate = 0.0

        net = load + rate - realized_generation.at(h)
        bought = max(net, 0.0)
        sold = max(-net, 0.0)
        cost += bought * pricing.buy.at(h) - sold * pricing.sell.at(h)
        outcomes.append(
            HourOutcome(
                hour=h, bought=bought, sold=sold, executed_battery_rate=rate, energy=energy
            )
        )
    return RealizedOutcome(hours=tuple(outcomes), realized_cost=cost / 1000.0)


def cost_gap(plan: dayahead.DayAheadPlan, outcome: RealizedOutcome) -> float:
    """Realized minus planned cost (€)."""
    return outcome.realized_cost - plan.planned_cost
