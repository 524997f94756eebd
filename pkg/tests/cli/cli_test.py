# -*- coding: utf-8 -*-
# pylint: disable=missing-class-docstring,missing-function-docstring,missing-module-docstring

import json
import pathlib

import hamcrest as hc
import pytest

from hemssa import profiles
from hemssa.cli import cli, cliutil
from hemssa.experiment import results

SMOKE_CONFIG = {
    "base_sample_count": 8,
    "capacity_classes": [[5000, 8000]],
    "shift_cases": [0],
    "parallelism": 1,
}


def _write_profile(path: pathlib.Path, p: profiles.HourlyProfile) -> pathlib.Path:
    path.write_text("".join(f"{h},{v}\n" for h, v in enumerate(p.values, start=1)), "utf-8")
    return path


@pytest.fixture(name="day_files")
def fixture_day_files(tmp_path: pathlib.Path) -> dict[str, pathlib.Path]:
    irr = profiles.bundled_profile(profiles.ProfileKind.IRRADIANCE)
    cloudy = profiles.HourlyProfile.of(irr.kind, (v * 0.5 for v in irr.values))
    return {
        "consumption": _write_profile(
            tmp_path / "consumption.csv",
            profiles.bundled_profile(profiles.ProfileKind.CONSUMPTION),
        ),
        "irradiance": _write_profile(tmp_path / "irradiance.csv", irr),
        "cloudy": _write_profile(tmp_path / "cloudy.csv", cloudy),
    }


def _run(argv: list[str]) -> int:
    with pytest.raises(SystemExit) as exc_info:
        cli.main(argv)
    code = exc_info.value.code
    return 0 if code is None else int(code)


def test_no_subcommand() -> None:
    assert _run([]) == cliutil.EX_USAGE


def test_unknown_flag() -> None:
    assert _run(["optimize", "--bogus"]) == cliutil.EX_USAGE


def test_version(capsys: pytest.CaptureFixture[str]) -> None:
    assert _run(["--version"]) == 0
    hc.assert_that(capsys.readouterr().out, hc.contains_string("0.1.0"))


def test_optimize(
    tmp_path: pathlib.Path,
    day_files: dict[str, pathlib.Path],
    capsys: pytest.CaptureFixture[str],
) -> None:
    out_dir = tmp_path / "out"
    code = _run(
        [
            "optimize",
            "--consumption", str(day_files["consumption"]),
            "--generation", str(day_files["irradiance"]),
            "--from-irradiance",
            "--out-dir", str(out_dir),
        ]
    )  # fmt: skip
    assert code == 0
    hc.assert_that(capsys.readouterr().out, hc.contains_string("planned cost:"))
    plan = json.loads((out_dir / "plan.json").read_text(encoding="utf-8"))
    assert len(plan["hours"]) == profiles.HOURS
    assert plan["battery"]["capacity"] == 10000.0


def test_simulate_perfect_forecast(
    tmp_path: pathlib.Path,
    day_files: dict[str, pathlib.Path],
    capsys: pytest.CaptureFixture[str],
) -> None:
    code = _run(
        [
            "simulate",
            "--consumption", str(day_files["consumption"]),
            "--generation", str(day_files["irradiance"]),
            "--realized", str(day_files["irradiance"]),
            "--from-irradiance",
            "--out-dir", str(tmp_path),
        ]
    )  # fmt: skip
    assert code == 0
    hc.assert_that(capsys.readouterr().out, hc.contains_string("cost gap:      0.0000 €"))
    outcome = json.loads((tmp_path / "outcome.json").read_text(encoding="utf-8"))
    assert outcome["cost_gap"] == pytest.approx(0.0, abs=1e-6)


def test_simulate_cloudy_day(
    tmp_path: pathlib.Path,
    day_files: dict[str, pathlib.Path],
) -> None:
    code = _run(
        [
            "simulate",
            "--consumption", str(day_files["consumption"]),
            "--generation", str(day_files["irradiance"]),
            "--realized", str(day_files["cloudy"]),
            "--from-irradiance",
            "--out-dir", str(tmp_path),
        ]
    )  # fmt: skip
    assert code == 0
    outcome = json.loads((tmp_path / "outcome.json").read_text(encoding="utf-8"))
    assert outcome["cost_gap"] > 0


def test_missing_profile(tmp_path: pathlib.Path, day_files: dict[str, pathlib.Path]) -> None:
    code = _run(
        [
            "optimize",
            "--consumption", str(tmp_path / "absent.csv"),
            "--generation", str(day_files["irradiance"]),
            "--from-irradiance",
            "--out-dir", str(tmp_path),
        ]
    )  # fmt: skip
    assert code == cliutil.EX_DATA


def test_invalid_household_config(
    tmp_path: pathlib.Path,
    day_files: dict[str, pathlib.Path],
) -> None:
    cfg_path = tmp_path / "household.json"
    cfg_path.write_text('{"battery": {"efficiency": 2}}', encoding="utf-8")
    code = _run(
        [
            "optimize",
            "--consumption", str(day_files["consumption"]),
            "--generation", str(day_files["irradiance"]),
            "--from-irradiance",
            "--config", str(cfg_path),
            "--out-dir", str(tmp_path),
        ]
    )  # fmt: skip
    assert code == cliutil.EX_DATA


def test_sa_smoke(tmp_path: pathlib.Path, capsys: pytest.CaptureFixture[str]) -> None:
    cfg_path = tmp_path / "smoke.json"
    cfg_path.write_text(json.dumps(SMOKE_CONFIG), encoding="utf-8")
    out_dir = tmp_path / "out"

    code = _run(["sa", "--config", str(cfg_path), "--out-dir", str(out_dir), "--no-progress"])

    assert code == 0
    for path in [
        results.FIRST_ORDER_CSV,
        results.TOTAL_ORDER_CSV,
        results.SUMMARY_JSON,
        pathlib.PurePath("second_order_+0_5000-8000.csv"),
    ]:
        assert (out_dir / path).is_file(), path
    summary = json.loads((out_dir / results.SUMMARY_JSON).read_text(encoding="utf-8"))
    assert summary["evaluations"] == 272
    assert summary["N"] == 8
    assert summary["d"] == 16
    hc.assert_that(capsys.readouterr().out, hc.contains_string("evaluations: 272"))


def test_sa_output_independent_of_workers(tmp_path: pathlib.Path) -> None:
    cfg_path = tmp_path / "smoke.json"
    cfg_path.write_text(json.dumps(SMOKE_CONFIG), encoding="utf-8")
    for workers in ["1", "2"]:
        code = _run(
            [
                "sa",
                "--config", str(cfg_path),
                "--workers", workers,
                "--out-dir", str(tmp_path / f"w{workers}"),
                "--no-progress",
            ]
        )  # fmt: skip
        assert code == 0
    for path in [results.FIRST_ORDER_CSV, results.TOTAL_ORDER_CSV]:
        assert (tmp_path / "w1" / path).read_bytes() == (tmp_path / "w2" / path).read_bytes()


def test_sa_invalid_config(tmp_path: pathlib.Path) -> None:
    cfg_path = tmp_path / "bad.json"
    cfg_path.write_text('{"base_sample_count": 1}', encoding="utf-8")
    assert _run(["sa", "--config", str(cfg_path), "--no-progress"]) == cliutil.EX_DATA


def test_sa_negative_workers(tmp_path: pathlib.Path) -> None:
    cfg_path = tmp_path / "smoke.json"
    cfg_path.write_text(json.dumps(SMOKE_CONFIG), encoding="utf-8")
    code = _run(["sa", "--config", str(cfg_path), "--workers", "-1", "--no-progress"])
    assert code == cliutil.EX_USAGE


def test_sobol_test_passes(capsys: pytest.CaptureFixture[str]) -> None:
    assert _run(["sobol-test", "--n", "4096"]) == 0
    out = capsys.readouterr().out
    hc.assert_that(out, hc.contains_string("ishigami"))
    hc.assert_that(out, hc.is_not(hc.contains_string("FAIL")))


def test_sobol_test_small_n() -> None:
    assert _run(["sobol-test", "--n", "1"]) == cliutil.EX_USAGE


def test_sa_rerun_summary_differs_only_in_run_metadata(tmp_path: pathlib.Path) -> None:
    cfg_path = tmp_path / "smoke.json"
    cfg_path.write_text(json.dumps(SMOKE_CONFIG), encoding="utf-8")
    summaries = []
    for workers in ["1", "2"]:
        out_dir = tmp_path / f"w{workers}"
        code = _run(
            [
                "sa",
                "--config", str(cfg_path),
                "--workers", workers,
                "--out-dir", str(out_dir),
                "--no-progress",
            ]
        )  # fmt: skip
        assert code == 0
        summaries.append(json.loads((out_dir / results.SUMMARY_JSON).read_text(encoding="utf-8")))

    assert [s["workers"] for s in summaries] == [1, 2]
    for summary in summaries:
        assert summary.pop("wall_time_seconds") >= 0
        summary.pop("workers")
    assert summaries[0] == summaries[1]
