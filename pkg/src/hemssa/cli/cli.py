#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""hemssa commandline interface.

Tools to plan and simulate a household battery over one day, and to measure
how sensitive the household's daily cost is to solar forecast errors and
battery size.
"""


import argparse
import sys
from typing import Sequence

import hemssa
from hemssa import dispatch, profiles
from hemssa.cli import cliutil
from hemssa.cli.cmds import (
    optimize,
    sa,
    simulate,
    sobol_test,
)
from hemssa.config import cfgerror
from hemssa.experiment import runner
from hemssa.optimize import opterror
from hemssa.sensitivity import saerror

_DATA_ERRORS = (cfgerror.ConfigurationError, profiles.Error)
_COMPUTATION_ERRORS = (opterror.Error, dispatch.Error, saerror.Error, runner.Error)


def main(argv: Sequence[str] | None = None) -> None:
    """Entrypoint for the program."""

    argparser = cliutil.ArgumentParser(
        description=__doc__,
        formatter_class=argparse.RawTextHelpFormatter,
    )
    argparser.set_defaults(run=None)
    argparser.add_argument(
        "--version",
        "-V",
        help="Print the version of the program.",
        action="version",
        version=f"%(prog)s {hemssa.__version__}",
    )

    subparsers = argparser.add_subparsers(required=True)
    optimize.add_subparser(subparsers)
    simulate.add_subparser(subparsers)
    sa.add_subparser(subparsers)
    sobol_test.add_subparser(subparsers)

    try:
        args = argparser.parse_args(argv)
        sys.exit(args.run(args))
    except cliutil.UsageError as exc:
        (exc.parser or argparser).print_usage(sys.stderr)
        print(exc, file=sys.stderr)
        sys.exit(exc.exit_code)
    except _DATA_ERRORS as exc:
        print(exc, file=sys.stderr)
        sys.exit(cliutil.EX_DATA)
    except _COMPUTATION_ERRORS as exc:
        print(exc, file=sys.stderr)
        sys.exit(cliutil.EX_COMPUTATION)
    except cliutil.CLIError as exc:
        print(exc, file=sys.stderr)
        sys.exit(exc.exit_code)


if __name__ == "__main__":
    main()
