# -*- coding: utf-8 -*-
"""Exception types for the optimize package."""


class Error(Exception):
    """Base exception emitted by the optimize package."""


class Infeasible(Error):
    """The linear program has no feasible point."""


class Unbounded(Error):
    """The objective of the linear program is unbounded below."""


class SolverFailure(Error):
    """The solver did not reach an optimum, e.g. it hit its iteration limit."""
