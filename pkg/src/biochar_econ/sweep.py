"""One-at-a-time sensitivity sweeps of NPV over a parameter grid.

Each grid point rebuilds a full ParameterSet (re-validated), reruns the
pipeline for every scenario, and records the NPV at the default discount
rate. Evaluation is pure, so points may be computed concurrently, but
results are always emitted in grid order.
"""

from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

from .ledger import build_ledger
from .metrics import npv
from .params import ConfigError, ParameterSet, ScenarioSpec

# Parameters with a built-in grid; anything numeric can still be swept by
# passing an explicit range.
DEFAULT_GRIDS: dict[str, tuple[float, float, float]] = {
    "credit_price": (50.0, 200.0, 10.0),
    "bagasse_availability": (0.50, 0.90, 0.05),
}

_SWEEPABLE_EXCLUDED = {
    "horizon_years",
    "discount_schedule",
    "credit_price_growth",
    "discount_rate",
}


def build_grid(start: float, stop: float, step: float) -> tuple[float, ...]:
    """Inclusive, strictly increasing grid from start to stop."""
    if step <= 0:
        raise ConfigError(f"step must be positive, got {step}")
    if stop < start:
        raise ConfigError(f"sweep range is empty: from {start} to {stop}")
    count = int(round((stop - start) / step))
    values = [round(start + k * step, 12) for k in range(count + 1)]
    # float drift must never produce duplicates or reordering
    for a, b in zip(values, values[1:]):
        if not (b > a):
            raise ConfigError(
                f"grid is not strictly increasing near {a} (step {step})"
            )
    return tuple(values)


def default_grid(parameter: str) -> tuple[float, ...]:
    try:
        start, stop, step = DEFAULT_GRIDS[parameter]
    except KeyError:
        raise ConfigError(
            f"no default grid for parameter {parameter!r}; "
            "pass an explicit range"
        ) from None
    return build_grid(start, stop, step)


@dataclass(frozen=True)
class SweepRow:
    scenario: str
    value: float
    npv: float


@dataclass(frozen=True)
class Threshold:
    """First grid value with non-negative NPV plus the interpolated zero."""

    scenario: str
    grid_value: float | None
    interpolated: float | None


@dataclass(frozen=True)
class SweepResult:
    parameter: str
    grid: tuple[float, ...]
    rows: tuple[SweepRow, ...]  # grid-major, scenario order preserved
    thresholds: tuple[Threshold, ...]


def _check_sweepable(base: ParameterSet, parameter: str) -> None:
    if parameter in _SWEEPABLE_EXCLUDED or not hasattr(base, parameter):
        raise ConfigError(f"unknown sweep parameter: {parameter!r}")
    if not isinstance(getattr(base, parameter), (int, float)):
        raise ConfigError(f"unknown sweep parameter: {parameter!r}")


def _evaluate_point(
    base: ParameterSet,
    scenarios: tuple[ScenarioSpec, ...],
    parameter: str,
    value: float,
) -> list[SweepRow]:
    try:
        candidate = replace(base, **{parameter: value})
    except ConfigError as exc:
        raise ConfigError(
            f"sweep point {parameter}={value} is invalid: {exc}"
        ) from exc
    rows = []
    for scenario in scenarios:
        ledger = build_ledger(candidate, scenario)
        present_value = npv(
            ledger.cash_flows(), candidate.resolved_discount_rate()
        )
        rows.append(
            SweepRow(scenario=scenario.label, value=value, npv=present_value)
        )
    return rows


def find_threshold(
    values: tuple[float, ...], npvs: tuple[float, ...], scenario: str
) -> Threshold:
    """Locate the break-even grid value for one scenario's NPV row.

    grid_value is the first grid point whose NPV is non-negative;
    interpolated is the linear zero crossing inside the bracketing step.
    Both are None when the row never reaches zero.
    """
    if len(values) != len(npvs):
        raise ValueError("values and npvs must have equal length")
    for i, (value, pv) in enumerate(zip(values, npvs)):
        if pv >= 0.0:
            if i == 0 or pv == 0.0:
                return Threshold(
                    scenario=scenario, grid_value=value, interpolated=value
                )
            prev_value, prev_pv = values[i - 1], npvs[i - 1]
            crossing = prev_value + (-prev_pv) * (value - prev_value) / (
                pv - prev_pv
            )
            return Threshold(
                scenario=scenario, grid_value=value, interpolated=crossing
            )
    return Threshold(scenario=scenario, grid_value=None, interpolated=None)


def sweep_1d(
    base: ParameterSet,
    scenarios: tuple[ScenarioSpec, ...],
    parameter: str,
    grid: tuple[float, ...] | None = None,
    concurrent: bool = False,
) -> SweepResult:
    """Sweep one parameter across a grid for every scenario."""
    _check_sweepable(base, parameter)
    if grid is None:
        grid = default_grid(parameter)
    else:
        grid = tuple(grid)
        for a, b in zip(grid, grid[1:]):
            if not (b > a):
                raise ConfigError("sweep grid must be strictly increasing")
    if not grid:
        raise ConfigError("sweep grid is empty")

    if concurrent:
        with ThreadPoolExecutor() as pool:
            per_point = list(
                pool.map(
                    lambda value: _evaluate_point(
                        base, scenarios, parameter, value
                    ),
                    grid,
                )
            )
    else:
        per_point = [
            _evaluate_point(base, scenarios, parameter, value)
            for value in grid
        ]

    rows: list[SweepRow] = []
    for point_rows in per_point:
        rows.extend(point_rows)

    thresholds = []
    for scenario in scenarios:
        series = [row.npv for row in rows if row.scenario == scenario.label]
        thresholds.append(
            find_threshold(grid, tuple(series), scenario.label)
        )

    return SweepResult(
        parameter=parameter,
        grid=grid,
        rows=tuple(rows),
        thresholds=tuple(thresholds),
    )


SWEEP_CSV_COLUMNS: tuple[str, ...] = ("scenario", "value", "npv")


def sweep_to_csv(result: SweepResult) -> str:
    """Long-form CSV, one row per scenario and grid point."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SWEEP_CSV_COLUMNS)
    for row in result.rows:
        writer.writerow([row.scenario, repr(row.value), f"{row.npv:.2f}"])
    return buf.getvalue()


def load_sweep_csv(text: str) -> list[dict[str, object]]:
    reader = csv.DictReader(io.StringIO(text))
    if tuple(reader.fieldnames or ()) != SWEEP_CSV_COLUMNS:
        raise ValueError(f"unexpected sweep columns: {reader.fieldnames!r}")
    return [
        {
            "scenario": raw["scenario"],
            "value": float(raw["value"]),
            "npv": float(raw["npv"]),
        }
        for raw in reader
    ]


def sweep_to_json_dict(result: SweepResult) -> dict:
    return {
        "parameter": result.parameter,
        "grid": list(result.grid),
        "rows": [
            {"scenario": r.scenario, "value": r.value, "npv": r.npv}
            for r in result.rows
        ],
        "thresholds": [
            {
                "scenario": t.scenario,
                "grid_value": t.grid_value,
                "interpolated": t.interpolated,
                "status": "reached" if t.grid_value is not None else "never",
            }
            for t in result.thresholds
        ],
    }


def sweep_to_json(result: SweepResult) -> str:
    return json.dumps(sweep_to_json_dict(result), indent=2, sort_keys=True) + "\n"
