# -*- coding: utf-8 -*-
"""Result tables of a sensitivity experiment and the files they are written to."""

import dataclasses
import pathlib
from typing import Any, Literal

from hemssa import artifacts, csvutil
from hemssa.experiment import scenario
from hemssa.sensitivity import indices

FIRST_ORDER_CSV = pathlib.PurePath("first_order.csv")
TOTAL_ORDER_CSV = pathlib.PurePath("total_order.csv")
SUMMARY_JSON = pathlib.PurePath("summary.json")

# A capacity total order index below this means the battery never binds.
NEGLIGIBLE_INDEX = 0.02

_TOP_INPUTS = 3


@dataclasses.dataclass(frozen=True)
class CaseKey:
    """One experiment case: a forecast shift and a capacity class."""

    shift: int
    capacity_class: scenario.CapacityClass

    @property
    def label(self) -> str:
        """Label used in file names, e.g. ``+0_5000-8000``."""
        return f"{self.shift:+d}_{self.capacity_class.label}"


@dataclasses.dataclass(frozen=True)
class CaseResult:
    """Outcome of one case.

    :field key: The case.
    :field evaluations: Number of model evaluations made.
    :field sensitivity: Estimated indices, or None if the case is flagged.
    :field flagged: Why no indices could be estimated, or None.
    :field netload_after_cutoff: Positive netload (Wh) after the cutoff hour
    under the shifted mean forecast.
    """

    key: CaseKey
    evaluations: int
    sensitivity: indices.SensitivityResult | None
    flagged: str | None
    netload_after_cutoff: float

    @property
    def capacity_binding(self) -> bool:
        """Whether batteries in the class can be too small for the evening load."""
        return self.key.capacity_class.lo < self.netload_after_cutoff

    def summary_dict(self) -> dict[str, Any]:
        """Per-case entry of the summary file."""
        entry: dict[str, Any] = {
            "shift": self.key.shift,
            "capacity_class": [self.key.capacity_class.lo, self.key.capacity_class.hi],
            "evaluations": self.evaluations,
            "netload_after_cutoff": self.netload_after_cutoff,
            "capacity_binding": self.capacity_binding,
            "flagged": self.flagged,
        }
        if (sa := self.sensitivity) is not None:
            entry["first_order_sum"] = float(sa.first_order.sum())
            entry["total_order_sum"] = float(sa.total_order.sum())
            entry["top_inputs"] = [
                {"input": label, "total_order": value}
                for label, value in sa.ranked("total")[:_TOP_INPUTS]
            ]
            entry["output_mean"] = sa.output_mean
            entry["output_variance"] = sa.output_variance
        return entry


@dataclasses.dataclass(frozen=True)
class ResultTable:
    """Indices of every case, one row per case in run order."""

    labels: tuple[str, ...]
    cases: tuple[CaseResult, ...]

    def header(self) -> list[str]:
        """Column names of the first and total order tables."""
        return ["shift", "capacity_lo", "capacity_hi", *self.labels]

    def rows(self, order: Literal["first", "total"]) -> list[list[str]]:
        """Rows of the first or total order table, header included.

        Flagged cases keep their row with empty index cells.
        """
        out = [self.header()]
        for case in self.cases:
            key = case.key
            row = [
                str(key.shift),
                csvutil.fmt_float(key.capacity_class.lo),
                csvutil.fmt_float(key.capacity_class.hi),
            ]
            if case.sensitivity is None:
                row.extend("" for _ in self.labels)
            else:
                values = (
                    case.sensitivity.first_order
                    if order == "first"
                    else case.sensitivity.total_order
                )
                row.extend(csvutil.fmt_float(v) for v in values)
            out.append(row)
        return out

    def second_order_rows(self, case: CaseResult) -> list[list[str]]:
        """Labelled pair-index matrix of ``case``; empty cells if flagged."""
        out = [["", *self.labels]]
        for i, label in enumerate(self.labels):
            if case.sensitivity is None:
                out.append([label, *("" for _ in self.labels)])
            else:
                out.append(
                    [label, *(csvutil.fmt_float(v) for v in case.sensitivity.second_order[i])]
                )
        return out

    def best_classes(self) -> dict[int, str | None]:
        """Per shift, the smallest class whose capacity index is negligible."""
        best: dict[int, scenario.CapacityClass | None] = {}
        for case in self.cases:
            best.setdefault(case.key.shift, None)
            sa = case.sensitivity
            if sa is None or abs(float(sa.total_order[-1])) >= NEGLIGIBLE_INDEX:
                continue
            current = best[case.key.shift]
            if current is None or case.key.capacity_class.lo < current.lo:
                best[case.key.shift] = case.key.capacity_class
        return {shift: None if c is None else c.label for shift, c in best.items()}


def second_order_path(key: CaseKey) -> pathlib.PurePath:
    """File holding the pair-index matrix of a case."""
    return pathlib.PurePath(f"second_order_{key.label}.csv")


@dataclasses.dataclass(frozen=True)
class ExperimentResult:
    """Everything a finished experiment produced.

    :field settings: Experiment settings as JSON-compatible data.
    :field table: Indices per case.
    :field netload_by_shift: Netload oracle (Wh) per shift case.
    :field wall_time: Seconds spent evaluating and estimating.
    :field workers: Worker processes used.
    """

    settings: dict[str, Any]
    table: ResultTable
    netload_by_shift: dict[int, float]
    wall_time: float
    workers: int

    @property
    def evaluations(self) -> int:
        """Total model evaluations over all cases."""
        return sum(c.evaluations for c in self.table.cases)

    @property
    def flagged(self) -> list[CaseResult]:
        """Cases without indices."""
        return [c for c in self.table.cases if c.flagged is not None]

    def summary_dict(self) -> dict[str, Any]:
        """Contents of the summary file."""
        settings = self.settings
        return {
            "N": settings["base_sample_count"],
            "d": len(self.table.labels),
            "epsilon": settings["error_halfwidth"],
            "labels": list(self.table.labels),
            "evaluations": self.evaluations,
            "wall_time_seconds": self.wall_time,
            "workers": self.workers,
            "settings": settings,
            "netload_after_cutoff": {f"{s:+d}": v for s, v in self.netload_by_shift.items()},
            "best_capacity_class": {f"{s:+d}": v for s, v in self.table.best_classes().items()},
            "cases": [c.summary_dict() for c in self.table.cases],
            "flagged": [c.key.label for c in self.flagged],
        }


def write_results(
    writer: artifacts.ArtifactWriter,
    result: ExperimentResult,
) -> list[pathlib.PurePath]:
    """Writes tables and the summary, returning the paths written."""
    written = []
    csvutil.write_rows(writer, FIRST_ORDER_CSV, result.table.rows("first"))
    written.append(FIRST_ORDER_CSV)
    csvutil.write_rows(writer, TOTAL_ORDER_CSV, result.table.rows("total"))
    written.append(TOTAL_ORDER_CSV)
    for case in result.table.cases:
        path = second_order_path(case.key)
        csvutil.write_rows(writer, path, result.table.second_order_rows(case))
        written.append(path)
    artifacts.write_json(writer, SUMMARY_JSON, result.summary_dict())
    written.append(SUMMARY_JSON)
    return written
