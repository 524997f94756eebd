# -*- coding: utf-8 -*-
"""Household and experiment configuration.

Configuration documents are JSON objects (YAML mappings are accepted too).
Every section and key is optional and falls back to the reference household;
unknown keys are rejected.
"""

from __future__ import annotations

import dataclasses
import pathlib
from typing import Any

from hemssa import profiles
from hemssa.config import cfgerror, yamlutil
from hemssa.experiment import scenario
from hemssa.optimize import dayahead, lpsolve

DEFAULT_CAPACITY_CLASSES = (
    scenario.CapacityClass(5000.0, 8000.0),
    scenario.CapacityClass(9000.0, 12000.0),
    scenario.CapacityClass(15000.0, 20000.0),
    scenario.CapacityClass(30000.0, 40000.0),
)
DEFAULT_SHIFT_CASES = (-2, -1, 0, 1, 2)
DEFAULT_WINDOW = scenario.HourWindow(5, 19)


def _meta(converter: yamlutil.Converter) -> dict[str, Any]:
    return {yamlutil.FROM_YAML: converter}


def _price_value(value: Any, path: str) -> float | list[float]:
    if isinstance(value, list):
        return yamlutil.as_list(yamlutil.as_float(minimum=0.0), length=profiles.HOURS)(value, path)
    return yamlutil.as_float(minimum=0.0)(value, path)


def _price_profile(
    kind: profiles.ProfileKind,
    value: float | list[float],
) -> profiles.HourlyProfile:
    if isinstance(value, list):
        return profiles.HourlyProfile.of(kind, value)
    return profiles.HourlyProfile.constant(kind, value)


@dataclasses.dataclass
class _PanelSection:
    area: float = dataclasses.field(
        default=profiles.DEFAULT_PANEL.area,
        metadata=_meta(yamlutil.as_float(minimum=0.0, exclusive_minimum=True)),
    )
    performance_ratio: float = dataclasses.field(
        default=profiles.DEFAULT_PANEL.performance_ratio,
        metadata=_meta(yamlutil.as_float(minimum=0.0, maximum=1.0, exclusive_minimum=True)),
    )

    def prepare(self) -> profiles.PanelSpec:
        return profiles.PanelSpec(area=self.area, performance_ratio=self.performance_ratio)


@dataclasses.dataclass
class _PricingSection:
    buy: float | list[float] = dataclasses.field(
        default=profiles.REFERENCE_BUY_PRICE,
        metadata=_meta(_price_value),
    )
    sell: float | list[float] = dataclasses.field(
        default=profiles.REFERENCE_SELL_PRICE,
        metadata=_meta(_price_value),
    )

    def prepare(self) -> profiles.PricingScheme:
        return profiles.PricingScheme(
            buy=_price_profile(profiles.ProfileKind.BUY_PRICE, self.buy),
            sell=_price_profile(profiles.ProfileKind.SELL_PRICE, self.sell),
        )


@dataclasses.dataclass
class _BatterySection:
    capacity: float = dataclasses.field(
        default=10000.0,
        metadata=_meta(yamlutil.as_float(minimum=0.0)),
    )
    max_charge: float = dataclasses.field(
        default=5000.0,
        metadata=_meta(yamlutil.as_float(minimum=0.0)),
    )
    max_discharge: float = dataclasses.field(
        default=5000.0,
        metadata=_meta(yamlutil.as_float(minimum=0.0)),
    )
    efficiency: float = dataclasses.field(
        default=0.95,
        metadata=_meta(yamlutil.as_float(minimum=0.0, maximum=1.0, exclusive_minimum=True)),
    )
    initial_energy: float = dataclasses.field(
        default=0.0,
        metadata=_meta(yamlutil.as_float(minimum=0.0)),
    )

    def prepare(self, where: str) -> dayahead.BatterySpec:
        try:
            return dayahead.BatterySpec(
                capacity=self.capacity,
                max_charge=self.max_charge,
                max_discharge=self.max_discharge,
                efficiency=self.efficiency,
                initial_energy=self.initial_energy,
            )
        except ValueError as exc:
            raise cfgerror.ConfigurationError(f"{where}: {exc}") from exc


_SOLVER_META = _meta(yamlutil.as_str(choices=[b.value for b in lpsolve.Backend]))


@dataclasses.dataclass(frozen=True)
class HouseholdConfig:
    """Household used by the single-day commands."""

    panel: profiles.PanelSpec = profiles.DEFAULT_PANEL
    pricing: profiles.PricingScheme = dataclasses.field(
        default_factory=lambda: profiles.PricingScheme.flat(
            profiles.REFERENCE_BUY_PRICE, profiles.REFERENCE_SELL_PRICE
        )
    )
    battery: dayahead.BatterySpec = dataclasses.field(
        default_factory=lambda: dayahead.BatterySpec(capacity=10000.0)
    )
    solver: lpsolve.Backend = lpsolve.Backend.SIMPLEX


@dataclasses.dataclass
class _HouseholdDoc:
    panel: _PanelSection = dataclasses.field(
        default_factory=_PanelSection, metadata=_meta(yamlutil.as_dataclass(_PanelSection))
    )
    pricing: _PricingSection = dataclasses.field(
        default_factory=_PricingSection, metadata=_meta(yamlutil.as_dataclass(_PricingSection))
    )
    battery: _BatterySection = dataclasses.field(
        default_factory=_BatterySection, metadata=_meta(yamlutil.as_dataclass(_BatterySection))
    )
    solver: str = dataclasses.field(default=lpsolve.Backend.SIMPLEX.value, metadata=_SOLVER_META)

    def prepare(self) -> HouseholdConfig:
        return HouseholdConfig(
            panel=self.panel.prepare(),
            pricing=self.pricing.prepare(),
            battery=self.battery.prepare("battery"),
            solver=lpsolve.Backend(self.solver),
        )


@dataclasses.dataclass(frozen=True)
class ExperimentConfig:  # pylint: disable=too-many-instance-attributes
    """Sensitivity study settings.

    :field base_sample_count: Base sample count ``N`` of each design.
    :field window: Hours with uncertain irradiance.
    :field error_halfwidth: Relative half-width of the irradiance error.
    :field capacity_classes: Capacity ranges, one case each.
    :field shift_cases: Forecast shifts (hours), one case each.
    :field consumption: Household consumption.
    :field irradiance: Mean irradiance before shifting.
    :field panel: PV panel.
    :field pricing: Grid prices.
    :field battery: Battery rates; capacity is sampled per scenario.
    :field mode: Evaluation mode.
    :field solver: LP solver implementation.
    :field parallelism: Worker processes, 0 for all CPUs.
    :field netload_cutoff_hour: Cutoff hour of the capacity-relevance report.
    :field profile_sources: Where each profile was read from.
    """

    base_sample_count: int = 1000
    window: scenario.HourWindow = DEFAULT_WINDOW
    error_halfwidth: float = 0.3
    capacity_classes: tuple[scenario.CapacityClass, ...] = DEFAULT_CAPACITY_CLASSES
    shift_cases: tuple[int, ...] = DEFAULT_SHIFT_CASES
    consumption: profiles.HourlyProfile = dataclasses.field(
        default_factory=lambda: profiles.bundled_profile(profiles.ProfileKind.CONSUMPTION)
    )
    irradiance: profiles.HourlyProfile = dataclasses.field(
        default_factory=lambda: profiles.bundled_profile(profiles.ProfileKind.IRRADIANCE)
    )
    panel: profiles.PanelSpec = profiles.DEFAULT_PANEL
    pricing: profiles.PricingScheme = dataclasses.field(
        default_factory=lambda: profiles.PricingScheme.flat(
            profiles.REFERENCE_BUY_PRICE, profiles.REFERENCE_SELL_PRICE
        )
    )
    battery: dayahead.BatterySpec = dataclasses.field(
        default_factory=lambda: dayahead.BatterySpec(capacity=0.0)
    )
    mode: scenario.EvaluationMode = scenario.EvaluationMode.FIXED_PLAN
    solver: lpsolve.Backend = lpsolve.Backend.SIMPLEX
    parallelism: int = 0
    netload_cutoff_hour: int = 16
    profile_sources: dict[str, str] = dataclasses.field(
        default_factory=lambda: {"consumption": "bundled", "irradiance": "bundled"},
        compare=False,
    )

    @property
    def d(self) -> int:
        """Number of sensitivity inputs: window hours plus capacity."""
        return len(self.window) + 1

    @property
    def labels(self) -> tuple[str, ...]:
        """Input labels."""
        return self.window.labels()

    def evaluations_per_case(self) -> int:
        """Model evaluations needed by each (shift, capacity class) case."""
        return self.base_sample_count * (2 * self.d + 2)

    def summary_dict(self) -> dict[str, Any]:
        """Settings as JSON-compatible data."""
        return {
            "base_sample_count": self.base_sample_count,
            "irradiance_hours": [self.window.first, self.window.last],
            "error_halfwidth": self.error_halfwidth,
            "capacity_classes": [[c.lo, c.hi] for c in self.capacity_classes],
            "shift_cases": list(self.shift_cases),
            "mode": str(self.mode),
            "solver": str(self.solver),
            "battery": self.battery.to_json_dict(),
            "panel": dataclasses.asdict(self.panel),
            "netload_cutoff_hour": self.netload_cutoff_hour,
            "profiles": dict(self.profile_sources),
        }


@dataclasses.dataclass
class _ProfilesSection:
    consumption: str | None = dataclasses.field(default=None, metadata=_meta(yamlutil.as_str()))
    irradiance: str | None = dataclasses.field(default=None, metadata=_meta(yamlutil.as_str()))

    def prepare(
        self,
        base_dir: pathlib.Path | None,
    ) -> tuple[profiles.HourlyProfile, profiles.HourlyProfile, dict[str, str]]:
        sources: dict[str, str] = {}
        loaded = []
        for name, value, kind in (
            ("consumption", self.consumption, profiles.ProfileKind.CONSUMPTION),
            ("irradiance", self.irradiance, profiles.ProfileKind.IRRADIANCE),
        ):
            if value is None:
                loaded.append(profiles.bundled_profile(kind))
                sources[name] = "bundled"
                continue
            path = pathlib.Path(value)
            if not path.is_absolute() and base_dir is not None:
                path = base_dir / path
            loaded.append(profiles.load_profile(path, kind))
            sources[name] = str(path)
        return loaded[0], loaded[1], sources


def _capacity_class(value: Any, path: str) -> scenario.CapacityClass:
    lo, hi = yamlutil.as_list(yamlutil.as_float(minimum=0.0), length=2)(value, path)
    if lo > hi:
        raise cfgerror.ConfigurationError(f"{path}: lower bound {lo:g} exceeds upper {hi:g}")
    return scenario.CapacityClass(lo, hi)


def _window(value: Any, path: str) -> scenario.HourWindow:
    first, last = yamlutil.as_list(
        yamlutil.as_int(minimum=1, maximum=profiles.HOURS), length=2
    )(value, path)
    if first > last:
        raise cfgerror.ConfigurationError(f"{path}: first hour {first} is after last {last}")
    return scenario.HourWindow(first, last)


@dataclasses.dataclass
class _ExperimentDoc:  # pylint: disable=too-many-instance-attributes
    base_sample_count: int = dataclasses.field(
        default=1000, metadata=_meta(yamlutil.as_int(minimum=2))
    )
    irradiance_hours: scenario.HourWindow = dataclasses.field(
        default=DEFAULT_WINDOW, metadata=_meta(_window)
    )
    error_halfwidth: float = dataclasses.field(
        default=0.3, metadata=_meta(yamlutil.as_float(minimum=0.0, maximum=1.0))
    )
    capacity_classes: list[scenario.CapacityClass] = dataclasses.field(
        default_factory=lambda: list(DEFAULT_CAPACITY_CLASSES),
        metadata=_meta(yamlutil.as_list(_capacity_class, min_length=1)),
    )
    shift_cases: list[int] = dataclasses.field(
        default_factory=lambda: list(DEFAULT_SHIFT_CASES),
        metadata=_meta(
            yamlutil.as_list(
                yamlutil.as_int(minimum=-profiles.MAX_SHIFT, maximum=profiles.MAX_SHIFT),
                min_length=1,
            )
        ),
    )
    profile_paths: _ProfilesSection = dataclasses.field(
        default_factory=_ProfilesSection,
        metadata={
            yamlutil.YAML_NAME: "profiles",
            yamlutil.FROM_YAML: yamlutil.as_dataclass(_ProfilesSection),
        },
    )
    panel: _PanelSection = dataclasses.field(
        default_factory=_PanelSection, metadata=_meta(yamlutil.as_dataclass(_PanelSection))
    )
    pricing: _PricingSection = dataclasses.field(
        default_factory=_PricingSection, metadata=_meta(yamlutil.as_dataclass(_PricingSection))
    )
    battery: _BatterySection = dataclasses.field(
        default_factory=_BatterySection, metadata=_meta(yamlutil.as_dataclass(_BatterySection))
    )
    solver: str = dataclasses.field(default=lpsolve.Backend.SIMPLEX.value, metadata=_SOLVER_META)
    mode: str = dataclasses.field(
        default=scenario.EvaluationMode.FIXED_PLAN.value,
        metadata=_meta(yamlutil.as_str(choices=[m.value for m in scenario.EvaluationMode])),
    )
    parallelism: int = dataclasses.field(default=0, metadata=_meta(yamlutil.as_int(minimum=0)))
    netload_cutoff_hour: int = dataclasses.field(
        default=16, metadata=_meta(yamlutil.as_int(minimum=0, maximum=profiles.HOURS))
    )

    def prepare(self, base_dir: pathlib.Path | None) -> ExperimentConfig:
        min_lo = min(c.lo for c in self.capacity_classes)
        if self.battery.initial_energy > min_lo:
            raise cfgerror.ConfigurationError(
                f"battery.initial_energy: {self.battery.initial_energy:g} exceeds the smallest "
                f"capacity class lower bound {min_lo:g}"
            )
        # Capacity is sampled per scenario; the section's value is only a template.
        battery = dataclasses.replace(self.battery, capacity=max(self.battery.initial_energy, 0.0))
        consumption, irradiance, sources = self.profile_paths.prepare(base_dir)
        return ExperimentConfig(
            base_sample_count=self.base_sample_count,
            window=self.irradiance_hours,
            error_halfwidth=self.error_halfwidth,
            capacity_classes=tuple(self.capacity_classes),
            shift_cases=tuple(self.shift_cases),
            consumption=consumption,
            irradiance=irradiance,
            panel=self.panel.prepare(),
            pricing=self.pricing.prepare(),
            battery=battery.prepare("battery"),
            mode=scenario.EvaluationMode(self.mode),
            solver=lpsolve.Backend(self.solver),
            parallelism=self.parallelism,
            netload_cutoff_hour=self.netload_cutoff_hour,
            profile_sources=sources,
        )


def _read_text(path: pathlib.Path) -> str:
    try:
        return path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise cfgerror.ConfigurationError(f"{path}: cannot read configuration: {exc}") from exc


def household_config_from_data(data: Any) -> HouseholdConfig:
    """Builds a HouseholdConfig from a parsed document.

    :raises cfgerror.ConfigurationError: The document is invalid.
    """
    if data is None:
        data = {}
    return yamlutil.from_mapping(_HouseholdDoc, data).prepare()


def load_household_config(path: pathlib.Path) -> HouseholdConfig:
    """Loads a household configuration file.

    :raises cfgerror.ConfigurationError: The file is unreadable or invalid.
    """
    return household_config_from_data(yamlutil.load_document(_read_text(path), str(path)))


def experiment_config_from_data(
    data: Any,
    base_dir: pathlib.Path | None = None,
) -> ExperimentConfig:
    """Builds an ExperimentConfig from a parsed document.

    :param data: Parsed document.
    :param base_dir: Directory that relative profile paths resolve against.
    :raises cfgerror.ConfigurationError: The document is invalid.
    :raises profiles.Error: A referenced profile file is invalid.
    """
    if data is None:
        data = {}
    return yamlutil.from_mapping(_ExperimentDoc, data).prepare(base_dir)


def load_experiment_config(path: pathlib.Path) -> ExperimentConfig:
    """Loads an experiment configuration file.

    Relative profile paths resolve against the file's directory.

    :raises cfgerror.ConfigurationError: The file is unreadable or invalid.
    :raises profiles.Error: A referenced profile file is invalid.
    """
    data = yamlutil.load_document(_read_text(path), str(path))
    return experiment_config_from_data(data, base_dir=path.parent)
