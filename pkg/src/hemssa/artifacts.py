# -*- coding: utf-8 -*-
"""Writers for the files produced by commands and experiments."""

# pylint: disable=too-few-public-methods

import contextlib
import io
import json
import os
import pathlib
from typing import IO, Any, Iterator, Protocol, Self


_ENCODING = "utf-8"
_NEWLINE = "\n"

# Fallback for --out-dir.
OUT_DIR_ENV = "HEMS_SA_OUT_DIR"


class ArtifactWriter(Protocol):
    """Protocol for writing files into an output collection."""

    def open_write(
        self,
        path: pathlib.PurePath,
        newline: str = _NEWLINE,
    ) -> contextlib.AbstractContextManager[IO[str]]:
        """Open a text file for writing, replacing any existing file.

        :param path: Path of the file, relative to the collection root.
        :param newline: Newline sequence to use.
        :return: Context-managed writable file-like object.
        """
        ...


class DirArtifactWriter:
    """Writes files into a local filesystem directory."""

    _dir_path: pathlib.Path
    _created_dirs: set[pathlib.Path]

    def __init__(self, dir_path: pathlib.Path) -> None:
        self._dir_path = dir_path
        self._created_dirs = set()

    @classmethod
    @contextlib.contextmanager
    def new_writer(cls, dir_path: pathlib.Path) -> Iterator[Self]:
        """Create a DirArtifactWriter writing into ``dir_path``."""
        yield cls(dir_path)

    @property
    def dir_path(self) -> pathlib.Path:
        """Returns the directory path."""
        return self._dir_path

    def open_write(
        self,
        path: pathlib.PurePath,
        newline: str = _NEWLINE,
    ) -> contextlib.AbstractContextManager[IO[str]]:
        """Implements ArtifactWriter.open_write."""
        full_path = self._dir_path / path
        parent_dir = full_path.parent
        if parent_dir not in self._created_dirs:
            parent_dir.mkdir(parents=True, exist_ok=True)
            self._created_dirs.add(parent_dir)
        return full_path.open("wt", encoding=_ENCODING, newline=newline)


class MemArtifactWriter:
    """Collects written files in memory."""

    files: dict[pathlib.PurePath, str]

    def __init__(self) -> None:
        self.files = {}

    @contextlib.contextmanager
    def open_write(
        self,
        path: pathlib.PurePath,
        newline: str = _NEWLINE,
    ) -> Iterator[IO[str]]:
        """Implements ArtifactWriter.open_write."""
        f = io.StringIO(newline=newline)
        try:
            yield f
        finally:
            f.seek(0, io.SEEK_SET)
            self.files[path] = f.read()


def write_json(writer: ArtifactWriter, path: pathlib.PurePath, data: Any) -> None:
    """Writes ``data`` as stable, human-readable JSON."""
    with writer.open_write(path) as f:
        json.dump(data, f, indent=2, sort_keys=True, ensure_ascii=False)
        f.write("\n")


def resolve_out_dir(flag_value: pathlib.Path | None) -> pathlib.Path:
    """Returns the output directory from the flag, the environment, or the CWD."""
    if flag_value is not None:
        return flag_value
    if env_value := os.environ.get(OUT_DIR_ENV):
        return pathlib.Path(env_value)
    return pathlib.Path(".")
