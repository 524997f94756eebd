# -*- coding: utf-8 -*-
"""Exception types for the sensitivity package."""


class Error(Exception):
    """Base exception emitted by the sensitivity package."""


class DimensionUnsupported(Error, ValueError):
    """Requested dimension exceeds the available direction numbers."""


class DesignError(Error, ValueError):
    """Sample design or model outputs have an invalid shape."""


class VarianceZero(Error, ArithmeticError):
    """Model output does not vary, so the indices are undefined."""
