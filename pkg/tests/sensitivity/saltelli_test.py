# -*- coding: utf-8 -*-
# pylint: disable=missing-class-docstring,missing-function-docstring,missing-module-docstring

import numpy as np
import pytest
from pytest_subtests import SubTests

from hemssa.sensitivity import saerror, saltelli, sobolseq


@pytest.mark.parametrize(
    "d,n,rows",
    [
        (2, 4, 24),
        (3, 8, 64),
        (16, 1000, 34000),
    ],
)
def test_design_size(d: int, n: int, rows: int) -> None:
    design = saltelli.saltelli_sample(d, n)
    assert design.num_rows == rows
    assert design.rows.shape == (rows, d)


def test_blocks(subtests: SubTests) -> None:
    d, n = 4, 16
    design = saltelli.saltelli_sample(d, n)
    base = sobolseq.sobol_points(2 * d, n, skip=1)
    a, b = base[:, :d], base[:, d:]

    np.testing.assert_array_equal(design.a(), a)
    np.testing.assert_array_equal(design.b(), b)
    for i in range(d):
        with subtests.test(input=i):
            ab = design.ab(i)
            ba = design.ba(i)
            np.testing.assert_array_equal(ab[:, i], b[:, i])
            np.testing.assert_array_equal(np.delete(ab, i, axis=1), np.delete(a, i, axis=1))
            np.testing.assert_array_equal(ba[:, i], a[:, i])
            np.testing.assert_array_equal(np.delete(ba, i, axis=1), np.delete(b, i, axis=1))


def test_rows_read_only() -> None:
    design = saltelli.saltelli_sample(2, 4)
    with pytest.raises(ValueError):
        design.rows[0, 0] = 0.5


def test_deterministic() -> None:
    np.testing.assert_array_equal(
        saltelli.saltelli_sample(6, 32).rows,
        saltelli.saltelli_sample(6, 32).rows,
    )


@pytest.mark.parametrize("d,n", [(1, 8), (2, 1), (0, 8)])
def test_invalid_design(d: int, n: int) -> None:
    with pytest.raises(saerror.DesignError):
        saltelli.saltelli_sample(d, n)


def test_dimension_unsupported() -> None:
    with pytest.raises(saerror.DimensionUnsupported):
        saltelli.saltelli_sample(sobolseq.MAX_DIMENSION, 2)


def test_block_index_checked() -> None:
    design = saltelli.saltelli_sample(2, 4)
    with pytest.raises(IndexError):
        design.ab(2)
    with pytest.raises(IndexError):
        design.ba(-1)


def test_split_outputs() -> None:
    d, n = 3, 4
    design = saltelli.saltelli_sample(d, n)
    outputs = np.arange(design.num_rows, dtype=np.float64)
    blocks = design.split_outputs(outputs)
    np.testing.assert_array_equal(blocks.f_a, [0, 1, 2, 3])
    np.testing.assert_array_equal(blocks.f_b, [4, 5, 6, 7])
    np.testing.assert_array_equal(blocks.f_ab[1], [12, 13, 14, 15])
    np.testing.assert_array_equal(blocks.f_ba[0], [20, 21, 22, 23])
    assert blocks.f_ab.shape == (d, n)
    assert blocks.f_ba.shape == (d, n)


def test_split_outputs_wrong_count() -> None:
    design = saltelli.saltelli_sample(2, 4)
    with pytest.raises(saerror.DesignError):
        design.split_outputs(np.zeros(design.num_rows - 1))
