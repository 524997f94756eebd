# -*- coding: utf-8 -*-
"""Unscrambled Sobol low-discrepancy sequence.

Points come from ``scipy.stats.qmc.Sobol`` with scrambling disabled, which
uses the Joe and Kuo direction numbers. Index 0 of the sequence is the origin.
"""

import warnings

import numpy as np
from scipy.stats import qmc

from hemssa.sensitivity import saerror

MAX_DIMENSION: int = getattr(qmc.Sobol, "MAXDIM", 21201)


class SobolGenerator:
    """Stateful generator of consecutive Sobol points.

    Deterministic for a fixed dimension and skip count.
    """

    _dimension: int
    _engine: qmc.Sobol
    next_index: int

    def __init__(self, dimension: int, skip: int = 0) -> None:
        """Initializer.

        :param dimension: Number of coordinates per point.
        :param skip: Number of leading points to discard.
        :raises saerror.DimensionUnsupported: ``dimension`` exceeds
        ``MAX_DIMENSION``.
        """
        if dimension < 1:
            raise ValueError(f"dimension must be at least 1, got {dimension}")
        if dimension > MAX_DIMENSION:
            raise saerror.DimensionUnsupported(
                f"Sobol direction numbers support up to {MAX_DIMENSION} dimensions, "
                f"got {dimension}"
            )
        if skip < 0:
            raise ValueError(f"skip must be non-negative, got {skip}")
        self._dimension = dimension
        self._engine = qmc.Sobol(d=dimension, scramble=False)
        if skip:
            self._engine.fast_forward(skip)
        self.next_index = skip

    @property
    def dimension(self) -> int:
        """Number of coordinates per point."""
        return self._dimension

    def draw(self, count: int) -> np.ndarray:
        """Returns the next ``count`` points as a ``(count, dimension)`` array."""
        if count < 0:
            raise ValueError(f"count must be non-negative, got {count}")
        if count == 0:
            return np.empty((0, self._dimension))
        with warnings.catch_warnings():
            # Sample sizes that are not powers of two are allowed.
            warnings.simplefilter("ignore", category=UserWarning)
            points = self._engine.random(count)
        self.next_index += count
        return points


def sobol_points(dimension: int, count: int, skip: int = 0) -> np.ndarray:
    """Returns points ``skip..skip+count-1`` of the Sobol sequence.

    :raises saerror.DimensionUnsupported: ``dimension`` exceeds
    ``MAX_DIMENSION``.
    """
    return SobolGenerator(dimension, skip=skip).draw(count)
