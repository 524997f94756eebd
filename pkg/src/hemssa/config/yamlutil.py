# -*- coding: utf-8 -*-
"""Utility code for mapping ruamel.yaml documents onto dataclasses.

Fields declare how they are read through ``dataclasses.field`` metadata:
``YAML_NAME`` overrides the key, ``FROM_YAML`` names a converter called as
``converter(value, path)`` where ``path`` is the dotted key path used in
error messages.
"""

from __future__ import annotations

import dataclasses
import math
from typing import Any, Callable, Sequence, TypeVar, cast, TYPE_CHECKING

from ruamel import yaml
from ruamel.yaml import error as yaml_error

from hemssa.config import cfgerror

if TYPE_CHECKING:
    from _typeshed import DataclassInstance

_T = TypeVar("_T")

# Keys in dataclasses.field metadata used by this module:
YAML_NAME = "yaml"  # Override the name of the field in a YAML mapping.
FROM_YAML = "from_yaml"  # Callable to convert from YAML value.

Converter = Callable[[Any, str], Any]

# JSON is a subset of YAML 1.2, so the same loader reads both.
YAML = yaml.YAML(typ="safe", pure=True)


def has_default(field: dataclasses.Field) -> bool:
    """Returns True if the given field has a default value."""
    return field.default != dataclasses.MISSING or field.default_factory != dataclasses.MISSING


def load_document(text: str, source: str) -> Any:
    """Parses a JSON or YAML document.

    :raises cfgerror.ConfigurationError: The text is not well formed.
    """
    try:
        return YAML.load(text)
    except yaml_error.YAMLError as exc:
        raise cfgerror.ConfigurationError(f"{source}: cannot parse document: {exc}") from exc


def _join(where: str, key: str) -> str:
    return f"{where}.{key}" if where else key


def from_mapping(cls: type[_T], data: Any, where: str = "") -> _T:
    """Instantiates the dataclass ``cls`` from a parsed mapping.

    :param cls: Dataclass to create.
    :param data: Parsed mapping.
    :param where: Dotted path of ``data`` in the document, empty at the top.
    :raises cfgerror.ConfigurationError: ``data`` is not a mapping, has
    unexpected keys, lacks required keys, or a converter rejects a value.
    """
    if not isinstance(data, dict):
        raise cfgerror.ConfigurationError(
            f"{where or 'document'}: expected a mapping, got {_type_name(data)}"
        )
    remaining = dict(data)
    kwargs: dict[str, Any] = {}
    for field in dataclasses.fields(cast(type["DataclassInstance"], cls)):
        key = field.metadata.get(YAML_NAME, field.name)
        path = _join(where, key)
        try:
            value = remaining.pop(key)
        except KeyError:
            if has_default(field):
                continue
            raise cfgerror.ConfigurationError(f"{path}: required field missing") from None
        if fn := field.metadata.get(FROM_YAML):
            value = fn(value, path)
        kwargs[field.name] = value
    if remaining:
        names = ", ".join(sorted(_join(where, str(k)) for k in remaining))
        raise cfgerror.ConfigurationError(f"unexpected fields: {names}")
    return cls(**kwargs)


def _type_name(value: Any) -> str:
    return "null" if value is None else type(value).__name__


def as_float(
    *,
    minimum: float | None = None,
    maximum: float | None = None,
    exclusive_minimum: bool = False,
) -> Converter:
    """Converter accepting a finite number within bounds."""

    def convert(value: Any, path: str) -> float:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise cfgerror.ConfigurationError(
                f"{path}: expected a number, got {_type_name(value)}"
            )
        result = float(value)
        if not math.isfinite(result):
            raise cfgerror.ConfigurationError(f"{path}: {value} is not finite")
        if minimum is not None:
            if result < minimum or (exclusive_minimum and result == minimum):
                op = ">" if exclusive_minimum else ">="
                raise cfgerror.ConfigurationError(f"{path}: must be {op} {minimum:g}, got {value}")
        if maximum is not None and result > maximum:
            raise cfgerror.ConfigurationError(f"{path}: must be <= {maximum:g}, got {value}")
        return result

    return convert


def as_int(*, minimum: int | None = None, maximum: int | None = None) -> Converter:
    """Converter accepting an integer within bounds."""

    def convert(value: Any, path: str) -> int:
        if isinstance(value, float) and value.is_integer():
            value = int(value)
        if isinstance(value, bool) or not isinstance(value, int):
            raise cfgerror.ConfigurationError(
                f"{path}: expected an integer, got {_type_name(value)}"
            )
        if minimum is not None and value < minimum:
            raise cfgerror.ConfigurationError(f"{path}: must be >= {minimum}, got {value}")
        if maximum is not None and value > maximum:
            raise cfgerror.ConfigurationError(f"{path}: must be <= {maximum}, got {value}")
        return value

    return convert


def as_str(*, choices: Sequence[str] | None = None) -> Converter:
    """Converter accepting a string, optionally one of ``choices``."""

    def convert(value: Any, path: str) -> str:
        if not isinstance(value, str):
            raise cfgerror.ConfigurationError(
                f"{path}: expected a string, got {_type_name(value)}"
            )
        if choices is not None and value not in choices:
            fmt_choices = ", ".join(repr(c) for c in choices)
            raise cfgerror.ConfigurationError(
                f"{path}: {value!r} is not one of {fmt_choices}"
            )
        return value

    return convert


def as_list(item: Converter, *, length: int | None = None, min_length: int = 0) -> Converter:
    """Converter accepting a sequence, converting each item with ``item``."""

    def convert(value: Any, path: str) -> list[Any]:
        if not isinstance(value, list):
            raise cfgerror.ConfigurationError(f"{path}: expected a list, got {_type_name(value)}")
        if length is not None and len(value) != length:
            raise cfgerror.ConfigurationError(
                f"{path}: expected {length} items, got {len(value)}"
            )
        if len(value) < min_length:
            raise cfgerror.ConfigurationError(
                f"{path}: expected at least {min_length} items, got {len(value)}"
            )
        return [item(v, f"{path}[{i}]") for i, v in enumerate(value)]

    return convert


def as_dataclass(cls: type[_T]) -> Converter:
    """Converter reading a nested mapping into the dataclass ``cls``."""

    def convert(value: Any, path: str) -> _T:
        return from_mapping(cls, value, path)

    return convert
