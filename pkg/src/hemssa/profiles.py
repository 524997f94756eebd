# -*- coding: utf-8 -*-
"""Hourly time-series data for a single household day.

A day is 24 hours, indexed 1..24 in files and in the public accessors. Power
values are treated as constant over their hour, so a value in W is also the
energy in Wh delivered during that hour.
"""

import csv
import dataclasses
import enum
import importlib.resources
import io
import math
import pathlib
from typing import Iterable, Sequence

import numpy as np

from hemssa import csvutil

HOURS = 24
MAX_SHIFT = 12


class Error(Exception):
    """Base exception emitted by profiles."""


class InvalidProfile(Error, ValueError):
    """Profile values violate the profile invariants."""


class MalformedFile(Error):
    """Profile file does not have the expected structure."""


class NegativeValue(InvalidProfile):
    """Profile contains a negative value."""


class OffsetTooLarge(Error, ValueError):
    """Requested shift is beyond the supported range."""


class KindMismatch(Error, ValueError):
    """Profile kind does not match the role it is used in."""


@enum.unique
class ProfileKind(enum.StrEnum):
    """The physical quantity held by a profile."""

    CONSUMPTION = "consumption"
    IRRADIANCE = "irradiance"
    GENERATION = "generation"
    BUY_PRICE = "buy_price"
    SELL_PRICE = "sell_price"

    @property
    def unit(self) -> str:
        """Unit of the profile values."""
        match self:
            case ProfileKind.CONSUMPTION | ProfileKind.GENERATION:
                return "W"
            case ProfileKind.IRRADIANCE:
                return "W/m²"
            case ProfileKind.BUY_PRICE | ProfileKind.SELL_PRICE:
                return "€/kWh"
            case _:
                raise ValueError(self)


@dataclasses.dataclass(frozen=True)
class HourlyProfile:
    """24 non-negative hourly values of one physical quantity."""

    kind: ProfileKind
    values: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.values) != HOURS:
            raise InvalidProfile(
                f"{self.kind} profile needs {HOURS} values, got {len(self.values)}"
            )
        for hour, v in enumerate(self.values, start=1):
            if not math.isfinite(v):
                raise InvalidProfile(f"{self.kind} value at hour {hour} is not finite: {v}")
            if v < 0:
                raise NegativeValue(f"{self.kind} value at hour {hour} is negative: {v}")

    @classmethod
    def of(cls, kind: ProfileKind, values: Iterable[float]) -> "HourlyProfile":
        """Creates a profile from any iterable of numbers."""
        return cls(kind=kind, values=tuple(float(v) for v in values))

    @classmethod
    def constant(cls, kind: ProfileKind, value: float) -> "HourlyProfile":
        """Creates a profile with the same value at every hour."""
        return cls.of(kind, [value] * HOURS)

    @property
    def unit(self) -> str:
        """Unit of the values."""
        return self.kind.unit

    def at(self, hour: int) -> float:
        """Returns the value at the 1-based ``hour``."""
        if not 1 <= hour <= HOURS:
            raise IndexError(hour)
        return self.values[hour - 1]

    def as_array(self) -> np.ndarray:
        """Returns a fresh float64 array of the values, 0-based."""
        return np.array(self.values, dtype=np.float64)

    def require_kind(self, *kinds: ProfileKind) -> None:
        """Raises ``KindMismatch`` unless the profile has one of ``kinds``."""
        if self.kind not in kinds:
            want = " or ".join(str(k) for k in kinds)
            raise KindMismatch(f"expected a {want} profile, got {self.kind}")


@dataclasses.dataclass(frozen=True)
class PanelSpec:
    """PV installation characteristics."""

    area: float
    performance_ratio: float

    def __post_init__(self) -> None:
        if not self.area > 0:
            raise ValueError(f"panel area must be positive, got {self.area}")
        if not 0 < self.performance_ratio <= 1:
            raise ValueError(f"performance ratio must be in (0, 1], got {self.performance_ratio}")


@dataclasses.dataclass(frozen=True)
class PricingScheme:
    """Hourly buying and selling prices."""

    buy: HourlyProfile
    sell: HourlyProfile

    def __post_init__(self) -> None:
        self.buy.require_kind(ProfileKind.BUY_PRICE)
        self.sell.require_kind(ProfileKind.SELL_PRICE)

    @classmethod
    def flat(cls, buy: float, sell: float) -> "PricingScheme":
        """Pricing with the same price at every hour."""
        return cls(
            buy=HourlyProfile.constant(ProfileKind.BUY_PRICE, buy),
            sell=HourlyProfile.constant(ProfileKind.SELL_PRICE, sell),
        )

    def scaled(self, factor: float) -> "PricingScheme":
        """Returns the scheme with every price multiplied by ``factor``."""
        return PricingScheme(
            buy=HourlyProfile.of(ProfileKind.BUY_PRICE, (v * factor for v in self.buy.values)),
            sell=HourlyProfile.of(ProfileKind.SELL_PRICE, (v * factor for v in self.sell.values)),
        )


# Fixed tariff of the reference household, €/kWh.
REFERENCE_BUY_PRICE = 0.2977
REFERENCE_SELL_PRICE = 0.1231

DEFAULT_PANEL = PanelSpec(area=40.0, performance_ratio=0.15)

# positive_netload_after(bundled consumption, bundled irradiance through
# DEFAULT_PANEL, 16), in Wh.
BUNDLED_NETLOAD_AFTER_16 = 9240.0


def _parse_rows(rows: Iterable[Sequence[str]], kind: ProfileKind, source: str) -> HourlyProfile:
    by_hour: dict[int, float] = {}
    for line_num, row in enumerate(rows, start=1):
        if not row or all(not cell.strip() for cell in row):
            continue
        if len(row) != 2:
            raise MalformedFile(f"{source}:{line_num}: expected 2 fields, got {len(row)}")
        hour_s, value_s = (cell.strip() for cell in row)
        try:
            hour = int(hour_s)
        except ValueError as exc:
            raise MalformedFile(f"{source}:{line_num}: hour {hour_s!r} is not an integer") from exc
        try:
            value = float(value_s)
        except ValueError as exc:
            raise MalformedFile(f"{source}:{line_num}: value {value_s!r} is not numeric") from exc
        if not 1 <= hour <= HOURS:
            raise MalformedFile(f"{source}:{line_num}: hour {hour} outside 1..{HOURS}")
        if hour in by_hour:
            raise MalformedFile(f"{source}:{line_num}: duplicate hour {hour}")
        if not math.isfinite(value):
            raise MalformedFile(f"{source}:{line_num}: value {value_s!r} is not finite")
        if value < 0:
            raise NegativeValue(f"{source}:{line_num}: negative value {value} at hour {hour}")
        by_hour[hour] = value

    if len(by_hour) != HOURS:
        missing = sorted(set(range(1, HOURS + 1)) - set(by_hour))
        raise MalformedFile(
            f"{source}: expected {HOURS} rows, got {len(by_hour)} (missing hours {missing})"
        )
    return HourlyProfile.of(kind, (by_hour[h] for h in range(1, HOURS + 1)))


def load_profile(path: pathlib.Path, kind: ProfileKind) -> HourlyProfile:
    """Loads a header-less ``hour,value`` CSV file.

    :param path: Path to the CSV file.
    :param kind: Kind of the profile held in the file.
    :raises MalformedFile: Wrong row count, non-numeric cells, duplicate or
    missing hours.
    :raises NegativeValue: A value is below zero.
    :return: Parsed profile.
    """
    try:
        with csvutil.open_read(path) as f:
            return _parse_rows(csv.reader(f), kind, str(path))
    except (OSError, UnicodeDecodeError) as exc:
        raise MalformedFile(f"{path}: cannot read profile: {exc}") from exc


def bundled_profile(kind: ProfileKind) -> HourlyProfile:
    """Loads one of the synthetic profiles shipped with the package.

    Only ``CONSUMPTION`` and ``IRRADIANCE`` are bundled.
    """
    match kind:
        case ProfileKind.CONSUMPTION:
            name = "consumption.csv"
        case ProfileKind.IRRADIANCE:
            name = "irradiance.csv"
        case _:
            raise ValueError(f"no bundled {kind} profile")
    text = importlib.resources.files("hemssa").joinpath("data", name).read_text(encoding="utf-8")
    return _parse_rows(csv.reader(io.StringIO(text, newline="")), kind, f"<bundled {name}>")


def irradiance_to_power(irr: HourlyProfile, panel: PanelSpec) -> HourlyProfile:
    """Converts irradiance to PV generation through the panel area and performance ratio."""
    irr.require_kind(ProfileKind.IRRADIANCE)
    factor = panel.area * panel.performance_ratio
    return HourlyProfile.of(ProfileKind.GENERATION, (v * factor for v in irr.values))


def shift_profile(p: HourlyProfile, offset: int) -> HourlyProfile:
    """Shifts a profile in time, filling vacated hours with zero.

    A negative ``offset`` moves values earlier (left), a positive one later.

    :raises OffsetTooLarge: If ``|offset|`` exceeds 12 hours.
    """
    if abs(offset) > MAX_SHIFT:
        raise OffsetTooLarge(f"shift of {offset} hours exceeds {MAX_SHIFT}")
    out = [0.0] * HOURS
    for i in range(HOURS):
        src = i - offset
        if 0 <= src < HOURS:
            out[i] = p.values[src]
    return HourlyProfile.of(p.kind, out)


def positive_netload_after(
    consumption: HourlyProfile,
    generation: HourlyProfile,
    cutoff_hour: int,
) -> float:
    """Energy (Wh) of consumption after ``cutoff_hour`` not covered by generation.

    Sums ``max(0, Y(h) - P(h))`` over hours ``h > cutoff_hour``. This is the
    storage a battery would need to cover the end of the day.
    """
    consumption.require_kind(ProfileKind.CONSUMPTION)
    generation.require_kind(ProfileKind.GENERATION)
    if not 0 <= cutoff_hour <= HOURS:
        raise ValueError(f"cutoff hour {cutoff_hour} outside 0..{HOURS}")
    total = 0.0
    for h in range(cutoff_hour + 1, HOURS + 1):
        total += max(0.0, consumption.at(h) - generation.at(h))
    return total
