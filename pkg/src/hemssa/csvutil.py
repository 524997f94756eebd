# -*- coding: utf-8 -*-
"""CSV utilities."""

import contextlib
import csv
import pathlib
from typing import IO, Iterable, Sequence

from hemssa import artifacts


def open_read(
    path: pathlib.Path,
) -> contextlib.AbstractContextManager[IO[str]]:
    """Opens a file in a manner suitable for reading CSV data from.

    :param path: Path to the file to read.
    :return: Opened file.
    """
    return path.open(mode="rt", encoding="utf-8", newline="")


def write_rows(
    writer: artifacts.ArtifactWriter,
    path: pathlib.PurePath,
    rows: Iterable[Sequence[object]],
) -> None:
    """Writes rows of cells as a CSV artifact.

    Line endings are always LF so that artifacts are byte-identical across
    platforms.

    :param writer: Writer to create the artifact with.
    :param path: Path of the artifact, relative to the writer's root.
    :param rows: Rows to write.
    """
    with writer.open_write(path, newline="") as f:
        csv.writer(f, lineterminator="\n").writerows(rows)


def fmt_float(v: float) -> str:
    """Formats a float at full precision for a CSV cell."""
    return repr(float(v))
