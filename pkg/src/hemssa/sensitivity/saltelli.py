# -*- coding: utf-8 -*-
"""Saltelli cross-sample design for first, second and total order indices.

Two base matrices ``A`` and ``B`` of ``n`` points in ``d`` dimensions are cut
from a single ``2d``-dimensional Sobol sequence. For every input ``i`` the
design adds ``AB_i`` (``A`` with column ``i`` from ``B``) and ``BA_i`` (``B``
with column ``i`` from ``A``), giving ``n * (2d + 2)`` rows laid out as::

    A, B, AB_0, ..., AB_{d-1}, BA_0, ..., BA_{d-1}

Input indices are 0-based in code.
"""

import dataclasses

import numpy as np

from hemssa.sensitivity import saerror, sobolseq


@dataclasses.dataclass(frozen=True)
class DesignOutputs:
    """Model outputs split by design block.

    :field f_a: Outputs on ``A``, shape ``(n,)``.
    :field f_b: Outputs on ``B``, shape ``(n,)``.
    :field f_ab: Outputs on ``AB_i``, shape ``(d, n)``.
    :field f_ba: Outputs on ``BA_i``, shape ``(d, n)``.
    """

    f_a: np.ndarray
    f_b: np.ndarray
    f_ab: np.ndarray
    f_ba: np.ndarray


@dataclasses.dataclass(frozen=True)
class SaltelliDesign:
    """Block-structured sample matrix in ``[0, 1)^d``."""

    d: int
    n: int
    rows: np.ndarray

    def __post_init__(self) -> None:
        if self.rows.shape != (self.num_rows, self.d):
            raise saerror.DesignError(
                f"design rows have shape {self.rows.shape}, want ({self.num_rows}, {self.d})"
            )

    @property
    def num_rows(self) -> int:
        """Total number of model evaluations the design needs."""
        return self.n * (2 * self.d + 2)

    def _block(self, index: int) -> np.ndarray:
        return self.rows[index * self.n : (index + 1) * self.n]

    def a(self) -> np.ndarray:
        """Block ``A``."""
        return self._block(0)

    def b(self) -> np.ndarray:
        """Block ``B``."""
        return self._block(1)

    def ab(self, i: int) -> np.ndarray:
        """Block ``AB_i``: ``A`` with column ``i`` taken from ``B``."""
        self._check_input(i)
        return self._block(2 + i)

    def ba(self, i: int) -> np.ndarray:
        """Block ``BA_i``: ``B`` with column ``i`` taken from ``A``."""
        self._check_input(i)
        return self._block(2 + self.d + i)

    def _check_input(self, i: int) -> None:
        if not 0 <= i < self.d:
            raise IndexError(f"input {i} outside 0..{self.d - 1}")

    def split_outputs(self, outputs: np.ndarray) -> DesignOutputs:
        """Splits outputs given in design-row order into blocks.

        :raises saerror.DesignError: ``outputs`` does not have one value per
        row.
        """
        outputs = np.asarray(outputs, dtype=np.float64)
        if outputs.shape != (self.num_rows,):
            raise saerror.DesignError(
                f"got {outputs.shape} outputs for a design of {self.num_rows} rows"
            )
        blocks = outputs.reshape(2 * self.d + 2, self.n)
        return DesignOutputs(
            f_a=blocks[0],
            f_b=blocks[1],
            f_ab=blocks[2 : 2 + self.d],
            f_ba=blocks[2 + self.d :],
        )


def saltelli_sample(d: int, n: int) -> SaltelliDesign:
    """Builds the cross-sample design for ``d`` inputs and base count ``n``.

    The ``n`` base points are Sobol points 1..n in dimension ``2d``; the
    origin is skipped. Powers of two for ``n`` give the best balance.

    :raises saerror.DimensionUnsupported: ``2d`` exceeds the Sobol table.
    :raises saerror.DesignError: ``d < 2`` or ``n < 2``.
    """
    if d < 2:
        raise saerror.DesignError(f"need at least 2 inputs, got {d}")
    if n < 2:
        raise saerror.DesignError(f"need a base sample count of at least 2, got {n}")

    base = sobolseq.sobol_points(2 * d, n, skip=1)
    a = base[:, :d]
    b = base[:, d:]

    blocks = [a, b]
    for i in range(d):
        ab = a.copy()
        ab[:, i] = b[:, i]
        blocks.append(ab)
    for i in range(d):
        ba = b.copy()
        ba[:, i] = a[:, i]
        blocks.append(ba)

    rows = np.vstack(blocks)
    rows.setflags(write=False)
    return SaltelliDesign(d=d, n=n, rows=rows)
