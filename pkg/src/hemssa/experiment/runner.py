# -*- coding: utf-8 -*-
"""Runs the sensitivity experiment over every shift case and capacity class.

All cases share one Saltelli design. Design rows are grouped by capacity, so
in fixed-plan mode each distinct capacity is planned once; groups are
evaluated in batches on a joblib worker pool and their outputs are put back in
design-row order before estimation. Results therefore do not depend on the
number of workers.
"""

import abc
import dataclasses
import time
import traceback
from typing import Callable, Iterator

import joblib
import numpy as np

from hemssa import profiles
from hemssa.config import ExperimentConfig
from hemssa.experiment import results, scenario
from hemssa.sensitivity import indices, saerror, saltelli

_BATCHES_PER_WORKER = 4
_MIN_BATCHES = 8


class Error(Exception):
    """Base exception emitted by the runner."""


class ExperimentFailed(Error):
    """The experiment ended abnormally."""


class ExperimentEvent(abc.ABC):
    """Abstract marker baseclass for experiment events."""


@dataclasses.dataclass(frozen=True)
class EndedEvent(ExperimentEvent):
    """Reports that the experiment has ended. This will be the terminal event."""

    abnormal: bool


@dataclasses.dataclass(frozen=True)
class ErrorEvent(ExperimentEvent):
    """Report of an error during the experiment."""

    message: str


@dataclasses.dataclass(frozen=True)
class ProgressEvent(ExperimentEvent):
    """Model evaluations completed so far, over all cases."""

    completed: int
    total: int


@dataclasses.dataclass(frozen=True)
class CaseCompletedEvent(ExperimentEvent):
    """A case has been evaluated and estimated."""

    case: results.CaseResult


@dataclasses.dataclass(frozen=True)
class ResultEvent(ExperimentEvent):
    """The finished experiment."""

    result: results.ExperimentResult


def resolve_workers(requested: int) -> int:
    """Worker count to use, with 0 meaning every available CPU."""
    if requested < 0:
        raise ValueError(f"worker count must be non-negative, got {requested}")
    if requested == 0:
        return max(1, joblib.cpu_count())
    return requested


def model_for_case(config: ExperimentConfig, shift: int) -> scenario.ScenarioModel:
    """Cost model of the household under a forecast shifted by ``shift`` hours."""
    return scenario.ScenarioModel(
        consumption=config.consumption,
        forecast_irradiance=profiles.shift_profile(config.irradiance, shift),
        panel=config.panel,
        pricing=config.pricing,
        battery=config.battery,
        window=config.window,
        mode=config.mode,
        backend=config.solver,
    )


def evaluate_scenario(
    s: scenario.ScenarioVector,
    config: ExperimentConfig,
    shift_case: int,
) -> float:
    """Daily cost (€) of one scenario under a shift case."""
    return model_for_case(config, shift_case).evaluate(s)


def netload_oracle(config: ExperimentConfig, shift: int) -> float:
    """Positive netload (Wh) after the cutoff hour under the shifted mean forecast."""
    generation = profiles.irradiance_to_power(
        profiles.shift_profile(config.irradiance, shift), config.panel
    )
    return profiles.positive_netload_after(
        config.consumption, generation, config.netload_cutoff_hour
    )


@dataclasses.dataclass(frozen=True)
class _Group:
    """Design rows sharing one capacity."""

    capacity: float
    rows: np.ndarray
    irradiance: np.ndarray


def _group_by_capacity(irradiance: np.ndarray, capacities: np.ndarray) -> list[_Group]:
    unique, inverse = np.unique(capacities, return_inverse=True)
    groups = []
    for k, capacity in enumerate(unique):
        rows = np.flatnonzero(inverse == k)
        groups.append(_Group(capacity=float(capacity), rows=rows, irradiance=irradiance[rows]))
    return groups


def _batches(groups: list[_Group], workers: int) -> list[list[_Group]]:
    """Splits groups into contiguous batches of similar row counts."""
    total_rows = sum(len(g.rows) for g in groups)
    target = max(1, total_rows // max(_MIN_BATCHES, workers * _BATCHES_PER_WORKER))
    batches: list[list[_Group]] = []
    current: list[_Group] = []
    current_rows = 0
    for group in groups:
        current.append(group)
        current_rows += len(group.rows)
        if current_rows >= target:
            batches.append(current)
            current = []
            current_rows = 0
    if current:
        batches.append(current)
    return batches


def _evaluate_batch(model: scenario.ScenarioModel, batch: list[_Group]) -> list[np.ndarray]:
    return [model.evaluate_group(g.capacity, g.irradiance) for g in batch]


def _estimate_case(
    design: saltelli.SaltelliDesign,
    outputs: np.ndarray,
    labels: tuple[str, ...],
) -> tuple[indices.SensitivityResult | None, str | None]:
    try:
        return indices.analyze(design, outputs, labels), None
    except saerror.VarianceZero as exc:
        return None, str(exc)


def _iter_experiment_core(
    *,
    config: ExperimentConfig,
    workers: int,
    do_continue: Callable[[], bool],
) -> Iterator[ExperimentEvent]:
    start = time.perf_counter()
    keys = [
        results.CaseKey(shift=shift, capacity_class=capacity_class)
        for shift in config.shift_cases
        for capacity_class in config.capacity_classes
    ]
    per_case = config.evaluations_per_case()
    total = per_case * len(keys)
    design = saltelli.saltelli_sample(config.d, config.base_sample_count)
    netloads = {shift: netload_oracle(config, shift) for shift in config.shift_cases}

    yield ProgressEvent(completed=0, total=total)

    completed = 0
    cases: list[results.CaseResult] = []
    with joblib.Parallel(n_jobs=workers, return_as="generator") as parallel:
        for key in keys:
            if not do_continue():
                return

            model = model_for_case(config, key.shift)
            irradiance, capacities = scenario.map_unit_rows(
                design.rows,
                model.forecast_irradiance,
                config.window,
                key.capacity_class,
                config.error_halfwidth,
            )
            batches = _batches(_group_by_capacity(irradiance, capacities), workers)
            outputs = np.empty(design.num_rows)
            batch_outputs = parallel(joblib.delayed(_evaluate_batch)(model, b) for b in batches)
            for batch, values in zip(batches, batch_outputs):
                for group, group_values in zip(batch, values):
                    outputs[group.rows] = group_values
                completed += sum(len(g.rows) for g in batch)
                yield ProgressEvent(completed=completed, total=total)

            sensitivity, flagged = _estimate_case(design, outputs, config.labels)
            if flagged is not None:
                yield ErrorEvent(message=f"case {key.label} has no indices: {flagged}")
            case = results.CaseResult(
                key=key,
                evaluations=per_case,
                sensitivity=sensitivity,
                flagged=flagged,
                netload_after_cutoff=netloads[key.shift],
            )
            cases.append(case)
            yield CaseCompletedEvent(case=case)

    yield ResultEvent(
        result=results.ExperimentResult(
            settings=config.summary_dict(),
            table=results.ResultTable(labels=config.labels, cases=tuple(cases)),
            netload_by_shift=netloads,
            wall_time=time.perf_counter() - start,
            workers=workers,
        )
    )


def iter_experiment(
    config: ExperimentConfig,
    *,
    workers: int | None = None,
    do_continue: Callable[[], bool] = lambda: True,
) -> Iterator[ExperimentEvent]:
    """Runs the experiment, reporting progress as events.

    :param config: Experiment settings.
    :param workers: Worker processes, overriding ``config.parallelism``; 0
    means every CPU.
    :param do_continue: Checked before each case; the run stops without a
    result when it returns False.
    :yields: Events about the run, ending with ``EndedEvent``.
    """
    abnormal: bool = False
    try:
        n_workers = resolve_workers(config.parallelism if workers is None else workers)
        yield from _iter_experiment_core(
            config=config,
            workers=n_workers,
            do_continue=do_continue,
        )
    except Exception as exc:  # pylint: disable=broad-exception-caught
        details = "".join(traceback.format_exception(exc))
        abnormal = True
        yield ErrorEvent(
            message=f"Unhandled exception during experiment: {details}",
        )
    finally:
        yield EndedEvent(abnormal=abnormal)


def run_experiment(
    config: ExperimentConfig,
    *,
    workers: int | None = None,
) -> results.ExperimentResult:
    """Runs the experiment to completion.

    :raises ExperimentFailed: The run ended abnormally.
    """
    result: results.ExperimentResult | None = None
    errors: list[str] = []
    for event in iter_experiment(config, workers=workers):
        match event:
            case ResultEvent(result=r):
                result = r
            case ErrorEvent(message=message):
                errors.append(message)
            case EndedEvent(abnormal=True):
                raise ExperimentFailed("\n".join(errors))
            case _:
                pass
    if result is None:
        raise ExperimentFailed("experiment ended without a result")
    return result
