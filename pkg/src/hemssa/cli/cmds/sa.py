# -*- coding: utf-8 -*-
"""
Runs the sensitivity experiment: for every forecast shift and battery capacity
class, estimates how much each hour's irradiance error and the battery
capacity contribute to the variance of the household's daily cost.

Writes first_order.csv, total_order.csv, one second_order_*.csv per case and
summary.json into the output directory.
"""

import argparse
import contextlib
import pathlib
import sys
import textwrap
from typing import Callable, Iterator

from progress import bar as progress  # type: ignore[import-untyped]

from hemssa import artifacts, config
from hemssa.cli import cliutil
from hemssa.experiment import results, runner


def add_subparser(subparsers) -> None:
    """Adds a subcommand parser to ``subparsers``."""
    argparser: argparse.ArgumentParser = subparsers.add_parser(
        "sa",
        description=__doc__,
        formatter_class=argparse.RawTextHelpFormatter,
    )
    argparser.set_defaults(run=run)

    argparser.add_argument(
        "--config",
        help="Path to the experiment configuration file.",
        type=pathlib.Path,
        required=True,
        metavar="EXPERIMENT.JSON",
    )
    argparser.add_argument(
        "--workers",
        help=textwrap.dedent(
            """
            Number of worker processes. 0 uses every available CPU. Defaults to
            the configuration's parallelism setting.
            """
        ),
        type=int,
        default=None,
        metavar="N",
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
    argparser.add_argument(
        "--no-progress",
        help="""Disable progress bar.""",
        action="store_true",
        default=False,
    )


@contextlib.contextmanager
def _progress_reporter(no_progress: bool) -> Iterator[Callable[[runner.ProgressEvent], None]]:
    if no_progress:
        progress_bar = None

        def on_progress(p: runner.ProgressEvent) -> None:
            del p  # unused

    else:
        progress_bar = progress.Bar("Evaluating scenarios")
        progress_bar.start()

        def on_progress(p: runner.ProgressEvent) -> None:
            progress_bar.index = p.completed
            progress_bar.max = p.total
            progress_bar.update()

    try:
        yield on_progress
    finally:
        if progress_bar is not None:
            progress_bar.finish()


def _print_result(result: results.ExperimentResult) -> None:
    fmt = cliutil.fmt_number
    print(f"evaluations: {result.evaluations} in {result.wall_time:.1f} s")
    for shift, netload in result.netload_by_shift.items():
        print(f"shift {shift:+d}: netload after cutoff {fmt(netload)} Wh")
    for case in result.table.cases:
        if case.sensitivity is None:
            print(f"{case.key.label}: flagged ({case.flagged})")
            continue
        top = ", ".join(
            f"{label}={fmt(value)}" for label, value in case.sensitivity.ranked("total")[:3]
        )
        print(
            f"{case.key.label}: top total order {top}; "
            f"first order sum {fmt(float(case.sensitivity.first_order.sum()))}"
        )


def run(args: argparse.Namespace) -> int:
    """CLI entry point."""
    if args.workers is not None and args.workers < 0:
        raise cliutil.UsageError(f"--workers must be non-negative, got {args.workers}")
    exp_cfg = config.load_experiment_config(args.config)
    out_dir = artifacts.resolve_out_dir(args.out_dir)

    result: results.ExperimentResult | None = None
    with _progress_reporter(args.no_progress) as on_progress:
        events = runner.iter_experiment(
            exp_cfg,
            workers=args.workers,
            do_continue=lambda: True,
        )
        for event in events:
            match event:
                case runner.ProgressEvent() as progress_event:
                    on_progress(progress_event)
                case runner.ErrorEvent(message=message):
                    print(message, file=sys.stderr)
                case runner.ResultEvent(result=r):
                    result = r
                case runner.EndedEvent(abnormal=abnormal):
                    if abnormal:
                        return cliutil.EX_COMPUTATION
                case _:
                    pass

    if result is None:
        print("experiment ended without a result", file=sys.stderr)
        return cliutil.EX_COMPUTATION

    with artifacts.DirArtifactWriter.new_writer(out_dir) as writer:
        results.write_results(writer, result)
    _print_result(result)
    print(f"results written to {out_dir}")
    return 0
