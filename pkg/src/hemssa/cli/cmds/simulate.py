# -*- coding: utf-8 -*-
"""
Plans the household battery against a generation forecast, then executes the
plan against the generation that was realized. Prints planned cost, realized
cost and their gap, and writes outcome.json into the output directory.
"""

import argparse
import pathlib

from hemssa import artifacts, dispatch
from hemssa.cli import cliutil
from hemssa.cli.cmds import optimize
from hemssa.optimize import dayahead

OUTCOME_JSON = pathlib.PurePath("outcome.json")


def add_subparser(subparsers) -> None:
    """Adds a subcommand parser to ``subparsers``."""
    argparser: argparse.ArgumentParser = subparsers.add_parser(
        "simulate",
        description=__doc__,
        formatter_class=argparse.RawTextHelpFormatter,
    )
    argparser.set_defaults(run=run)
    optimize.add_plan_flags(argparser)
    argparser.add_argument(
        "--realized",
        help="Path to the realized generation CSV file, same format as --generation.",
        type=pathlib.Path,
        required=True,
        metavar="REALIZED.CSV",
    )


def run(args: argparse.Namespace) -> int:
    """CLI entry point."""
    household = optimize.load_household(args)
    problem = optimize.build_problem(args, household)
    realized = optimize.load_generation(args, args.realized, household)

    plan = dayahead.solve_day_ahead(problem, household.solver)
    outcome = dispatch.execute_plan(
        plan, realized, problem.consumption, problem.pricing, problem.battery
    )
    gap = dispatch.cost_gap(plan, outcome)

    fmt = cliutil.fmt_number
    print(f"planned cost:  {fmt(plan.planned_cost)} €")
    print(f"realized cost: {fmt(outcome.realized_cost)} €")
    print(f"cost gap:      {fmt(gap)} €")

    data = outcome.to_json_dict()
    data["planned_cost"] = plan.planned_cost
    data["cost_gap"] = gap
    out_dir = artifacts.resolve_out_dir(args.out_dir)
    with artifacts.DirArtifactWriter.new_writer(out_dir) as writer:
        artifacts.write_json(writer, OUTCOME_JSON, data)
    return 0
