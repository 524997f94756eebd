# -*- coding: utf-8 -*-
"""
Plans the household battery for one day against a generation forecast and
prints the hourly schedule. Writes plan.json into the output directory.
"""

import argparse
import dataclasses
import pathlib
import textwrap
from typing import Any

from hemssa import artifacts, config, profiles
from hemssa.cli import cliutil
from hemssa.optimize import dayahead

PLAN_JSON = pathlib.PurePath("plan.json")


def add_subparser(subparsers) -> None:
    """Adds a subcommand parser to ``subparsers``."""
    argparser: argparse.ArgumentParser = subparsers.add_parser(
        "optimize",
        description=__doc__,
        formatter_class=argparse.RawTextHelpFormatter,
    )
    argparser.set_defaults(run=run)
    add_plan_flags(argparser)


def add_plan_flags(argparser: argparse.ArgumentParser) -> None:
    """Adds the flags describing one household day."""
    argparser.add_argument(
        "--consumption",
        help="Path to the hourly consumption CSV file (hour,W).",
        type=pathlib.Path,
        required=True,
        metavar="CONSUMPTION.CSV",
    )
    argparser.add_argument(
        "--generation",
        help=textwrap.dedent(
            """
            Path to the hourly generation forecast CSV file (hour,W). With
            --from-irradiance the file holds irradiance (hour,W/m²) instead.
            """
        ),
        type=pathlib.Path,
        required=True,
        metavar="GENERATION.CSV",
    )
    argparser.add_argument(
        "--config",
        help=textwrap.dedent(
            """
            Path to the household configuration file (panel, pricing, battery,
            solver). The reference household is used if omitted.
            """
        ),
        type=pathlib.Path,
        default=None,
        metavar="HOUSEHOLD.JSON",
    )
    argparser.add_argument(
        "--from-irradiance",
        help="Generation profiles are irradiance, converted through the panel.",
        action="store_true",
        default=False,
    )
    argparser.add_argument(
        "--out-dir",
        help=textwrap.dedent(
            f"""
            Directory to write output files into. Defaults to ${artifacts.OUT_DIR_ENV},
            or the current directory.
            """
        ),
        type=pathlib.Path,
        default=None,
        metavar="DIR",
    )


def load_household(args: argparse.Namespace) -> config.HouseholdConfig:
    """Household configuration from --config, or the reference household."""
    if args.config is None:
        return config.HouseholdConfig()
    return config.load_household_config(args.config)


def load_generation(
    args: argparse.Namespace,
    path: pathlib.Path,
    household: config.HouseholdConfig,
) -> profiles.HourlyProfile:
    """Reads a generation profile, converting irradiance if requested."""
    if args.from_irradiance:
        irradiance = profiles.load_profile(path, profiles.ProfileKind.IRRADIANCE)
        return profiles.irradiance_to_power(irradiance, household.panel)
    return profiles.load_profile(path, profiles.ProfileKind.GENERATION)


def build_problem(
    args: argparse.Namespace,
    household: config.HouseholdConfig,
) -> dayahead.OptimizationProblem:
    """Optimization inputs from the plan flags."""
    return dayahead.OptimizationProblem(
        consumption=profiles.load_profile(args.consumption, profiles.ProfileKind.CONSUMPTION),
        forecast_generation=load_generation(args, args.generation, household),
        pricing=household.pricing,
        battery=household.battery,
    )


def plan_json(plan: dayahead.DayAheadPlan, problem: dayahead.OptimizationProblem) -> Any:
    """Contents of plan.json."""
    hours = []
    for decision in plan.hours:
        entry = dataclasses.asdict(decision)
        entry["consumption"] = problem.consumption.at(decision.hour)
        entry["generation"] = problem.forecast_generation.at(decision.hour)
        hours.append(entry)
    return {
        "planned_cost": plan.planned_cost,
        "battery": problem.battery.to_json_dict(),
        "hours": hours,
    }


def print_plan(plan: dayahead.DayAheadPlan, problem: dayahead.OptimizationProblem) -> None:
    """Prints the hourly schedule and the planned cost."""
    fmt = cliutil.fmt_number
    print(
        f"{'hour':>4} {'consumption':>12} {'generation':>12} {'bought':>12} "
        f"{'sold':>12} {'battery':>12} {'energy':>12}"
    )
    for d in plan.hours:
        print(
            f"{d.hour:>4} {fmt(problem.consumption.at(d.hour)):>12} "
            f"{fmt(problem.forecast_generation.at(d.hour)):>12} {fmt(d.bought):>12} "
            f"{fmt(d.sold):>12} {fmt(d.battery_rate):>12} {fmt(d.energy):>12}"
        )
    print(f"planned cost: {fmt(plan.planned_cost)} €")


def run(args: argparse.Namespace) -> int:
    """CLI entry point."""
    household = load_household(args)
    problem = build_problem(args, household)
    plan = dayahead.solve_day_ahead(problem, household.solver)
    print_plan(plan, problem)

    out_dir = artifacts.resolve_out_dir(args.out_dir)
    with artifacts.DirArtifactWriter.new_writer(out_dir) as writer:
        artifacts.write_json(writer, PLAN_JSON, plan_json(plan, problem))
    return 0
