# -*- coding: utf-8 -*-
"""CLI utilities."""

import argparse
from typing import NoReturn

EX_USAGE = 1
EX_DATA = 2
EX_COMPUTATION = 3


class CLIError(Exception):
    """Base class for CLI errors."""

    exit_code: int = 1


class UsageError(CLIError):
    """Exception for user usage error."""

    exit_code = EX_USAGE

    def __init__(self, message: str, parser: argparse.ArgumentParser | None = None) -> None:
        super().__init__(message)
        self.parser = parser


class ComputationError(CLIError):
    """A computation finished but its result is not acceptable."""

    exit_code = EX_COMPUTATION


class ArgumentParser(argparse.ArgumentParser):
    """ArgumentParser that raises UsageError instead of exiting."""

    def error(self, message: str) -> NoReturn:
        raise UsageError(message, parser=self)


def fmt_number(v: float) -> str:
    """Formats a number for human-readable output, without negative zero."""
    return f"{round(v, 4) + 0.0:.4f}"
