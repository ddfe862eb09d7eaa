"""Command line front end.

Subcommands:
  run        simulate scenarios; write per-scenario ledgers, metrics, ranking
  sweep      1-D sensitivity sweep of NPV over one parameter
  calibrate  solve the three adjustment ratios from cost anchors
  report     run plus the default sweeps plus rendered figures

Exit codes: 0 success, 2 configuration or usage error, 3 I/O error,
4 calibration failure.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys
from typing import Sequence

from . import __version__
from .ledger import Ledger, build_ledger, ledger_to_csv, ledger_to_json
from .metrics import MetricsReport, compute_metrics
from .params import (
    CalibrationAnchors,
    CalibrationError,
    ConfigError,
    ParameterSet,
    PRESETS,
    ScenarioSpec,
    calibrate,
    preset_scenarios,
    read_parameters,
    scenario_id,
    write_parameters,
)
from .sweep import (
    DEFAULT_GRIDS,
    SweepResult,
    build_grid,
    sweep_1d,
    sweep_to_csv,
    sweep_to_json,
)


def _write_text(path: str, text: str) -> None:
    # newline="" so the writers' own line endings survive untranslated
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--config", metavar="PATH",
        help="JSON parameter file; omitted keys keep their defaults",
    )
    parser.add_argument(
        "--out", metavar="DIR", required=True,
        help="output directory, created if missing",
    )
    parser.add_argument(
        "--format", choices=("csv", "json", "both"), default="both",
        help="delimited, structured, or both (default: both)",
    )
    parser.add_argument(
        "--preset", default="brazil-sugarcane",
        choices=sorted(PRESETS),
        help="built-in scenario set (default: brazil-sugarcane)",
    )
    parser.add_argument(
        "--scenarios", metavar="LABELS",
        help="comma-separated scenario labels to keep, e.g. small-A,large-B",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="biochar-econ",
        description="Techno-economic simulation of farm-scale biochar "
        "production from sugarcane bagasse.",
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {__version__}"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="simulate scenarios and write metrics")
    _add_common(p_run)
    p_run.add_argument(
        "--calibrate", action="store_true",
        help="solve the adjustment ratios against built-in anchors first",
    )
    p_run.set_defaults(func=_cmd_run)

    p_sweep = sub.add_parser("sweep", help="NPV sensitivity over one parameter")
    _add_common(p_sweep)
    p_sweep.add_argument(
        "--calibrate", action="store_true",
        help="solve the adjustment ratios against built-in anchors first",
    )
    p_sweep.add_argument(
        "--param", required=True, metavar="NAME",
        help="parameter to sweep, e.g. credit_price",
    )
    p_sweep.add_argument(
        "--from", dest="start", type=float, metavar="X",
        help="grid start (with --to and --step)",
    )
    p_sweep.add_argument(
        "--to", dest="stop", type=float, metavar="X",
        help="grid stop, inclusive",
    )
    p_sweep.add_argument(
        "--step", dest="step", type=float, metavar="X", help="grid step"
    )
    p_sweep.set_defaults(func=_cmd_sweep)

    p_cal = sub.add_parser(
        "calibrate", help="solve adjustment ratios from cost anchors"
    )
    p_cal.add_argument("--config", metavar="PATH", help="JSON parameter file")
    p_cal.add_argument(
        "--out", metavar="DIR", required=True,
        help="output directory, created if missing",
    )
    defaults = CalibrationAnchors()
    p_cal.add_argument(
        "--anchor-equipment", type=float, default=defaults.equipment_cost,
        metavar="USD", help="installed equipment cost of the anchor farm",
    )
    p_cal.add_argument(
        "--anchor-labor", type=float, default=defaults.labor_cost_horizon,
        metavar="USD", help="escalated labor spend over the horizon",
    )
    p_cal.add_argument(
        "--anchor-ratio", type=float, default=defaults.revenue_cost_ratio,
        metavar="R", help="target life-cycle revenue/cost ratio",
    )
    p_cal.add_argument(
        "--anchor-farm-size", type=float, default=defaults.farm_size_ha,
        metavar="HA", help="anchor farm size",
    )
    p_cal.set_defaults(func=_cmd_calibrate)

    p_rep = sub.add_parser(
        "report", help="full run, default sweeps, and figures"
    )
    _add_common(p_rep)
    p_rep.add_argument(
        "--no-calibrate", dest="calibrate", action="store_false",
        help="simulate with the configured ratios as-is",
    )
    p_rep.set_defaults(func=_cmd_report, calibrate=True)

    return parser


def _parameters(args: argparse.Namespace) -> ParameterSet:
    p = read_parameters(args.config) if args.config else ParameterSet()
    if getattr(args, "calibrate", False):
        p = calibrate(p).parameters
    return p


def _select_scenarios(args: argparse.Namespace) -> tuple[ScenarioSpec, ...]:
    preset = preset_scenarios(args.preset)
    if not args.scenarios:
        return preset
    wanted = {s.strip() for s in args.scenarios.split(",") if s.strip()}
    known = {sc.label for sc in preset}
    for label in sorted(wanted):
        if label not in known:
            raise ConfigError(
                f"unknown scenario label: {label!r} "
                f"(available: {', '.join(sc.label for sc in preset)})"
            )
    selected = tuple(sc for sc in preset if sc.label in wanted)
    if not selected:
        raise ConfigError("no scenarios selected")
    return selected


def _simulate(
    p: ParameterSet, scenarios: Sequence[ScenarioSpec]
) -> tuple[list[Ledger], list[MetricsReport]]:
    ledgers = [build_ledger(p, sc) for sc in scenarios]
    reports = [compute_metrics(ledger, p) for ledger in ledgers]
    return ledgers, reports


RANKING_CSV_COLUMNS: tuple[str, ...] = (
    "rank",
    "scenario",
    "npv",
    "irr",
    "irr_status",
    "break_even_years",
    "break_even_status",
    "roi_average_pct",
    "benefit_cost_delta",
)


def ranking_to_csv(reports: Sequence[MetricsReport]) -> str:
    """NPV-ranked scenario summary as CSV; empty cells mean 'undefined'."""
    import csv
    import io

    ranked = sorted(reports, key=lambda r: r.npv, reverse=True)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(RANKING_CSV_COLUMNS)
    for rank, report in enumerate(ranked, start=1):
        irr_cell = f"{report.irr.value:.6f}" if report.irr.defined else ""
        be = report.break_even_years
        writer.writerow(
            [
                rank,
                report.scenario_label,
                f"{report.npv:.2f}",
                irr_cell,
                report.irr.status,
                "" if be is None else f"{be:.4f}",
                "reached" if be is not None else "never",
                f"{report.roi.average_pct:.4f}",
                f"{report.benefit_cost_delta:.2f}",
            ]
        )
    return buf.getvalue()


def _write_run_outputs(
    args: argparse.Namespace,
    scenarios: Sequence[ScenarioSpec],
    ledgers: Sequence[Ledger],
    reports: Sequence[MetricsReport],
) -> None:
    os.makedirs(args.out, exist_ok=True)
    for scenario, ledger, report in zip(scenarios, ledgers, reports):
        sid = scenario_id(scenario)
        if args.format in ("csv", "both"):
            _write_text(
                os.path.join(args.out, f"ledger_{sid}.csv"),
                ledger_to_csv(ledger),
            )
        if args.format in ("json", "both"):
            _write_text(
                os.path.join(args.out, f"ledger_{sid}.json"),
                ledger_to_json(ledger),
            )
        _write_text(
            os.path.join(args.out, f"metrics_{sid}.json"), report.to_json()
        )
    _write_text(
        os.path.join(args.out, "ranking.csv"), ranking_to_csv(reports)
    )


def _print_summary(reports: Sequence[MetricsReport]) -> None:
    for report in reports:
        irr_txt = (
            f"{report.irr.value * 100.0:.2f}%"
            if report.irr.defined
            else report.irr.status
        )
        be = report.break_even_years
        be_txt = "never" if be is None else f"{be:.2f}y"
        print(
            f"{report.scenario_label}: npv={report.npv:.2f} irr={irr_txt} "
            f"break-even={be_txt} roi-avg={report.roi.average_pct:.2f}%/y"
        )
    ranked = sorted(reports, key=lambda r: r.npv, reverse=True)
    print("ranking by NPV:")
    for rank, report in enumerate(ranked, start=1):
        print(f"  {rank}. {report.scenario_label}  {report.npv:.2f}")


def _cmd_run(args: argparse.Namespace) -> int:
    p = _parameters(args)
    scenarios = _select_scenarios(args)
    ledgers, reports = _simulate(p, scenarios)
    _write_run_outputs(args, scenarios, ledgers, reports)
    _print_summary(reports)
    return 0


def _write_sweep_outputs(
    args: argparse.Namespace, result: SweepResult
) -> None:
    os.makedirs(args.out, exist_ok=True)
    if args.format in ("csv", "both"):
        _write_text(
            os.path.join(args.out, f"sweep_{result.parameter}.csv"),
            sweep_to_csv(result),
        )
    if args.format in ("json", "both"):
        _write_text(
            os.path.join(args.out, f"sweep_{result.parameter}.json"),
            sweep_to_json(result),
        )


def _print_thresholds(result: SweepResult) -> None:
    for threshold in result.thresholds:
        if threshold.grid_value is None:
            print(
                f"{threshold.scenario}: NPV < 0 across the whole "
                f"{result.parameter} grid"
            )
        else:
            print(
                f"{threshold.scenario}: NPV >= 0 from "
                f"{result.parameter}={threshold.grid_value:g} "
                f"(crossing ~{threshold.interpolated:.4f})"
            )


def _cmd_sweep(args: argparse.Namespace) -> int:
    p = _parameters(args)
    scenarios = _select_scenarios(args)
    bounds = (args.start, args.stop, args.step)
    grid = None
    if any(v is not None for v in bounds):
        if any(v is None for v in bounds):
            raise ConfigError("provide --from, --to, and --step together")
        grid = build_grid(args.start, args.stop, args.step)
    result = sweep_1d(p, scenarios, args.param, grid=grid)
    _write_sweep_outputs(args, result)
    _print_thresholds(result)
    return 0


def _cmd_calibrate(args: argparse.Namespace) -> int:
    p = read_parameters(args.config) if args.config else ParameterSet()
    anchors = CalibrationAnchors(
        equipment_cost=args.anchor_equipment,
        labor_cost_horizon=args.anchor_labor,
        revenue_cost_ratio=args.anchor_ratio,
        farm_size_ha=args.anchor_farm_size,
    )
    result = calibrate(p, anchors)
    os.makedirs(args.out, exist_ok=True)
    write_parameters(
        result.parameters, os.path.join(args.out, "calibrated_config.json")
    )
    solved = result.parameters
    payload = {
        "anchors": dataclasses.asdict(anchors),
        "solved": {
            "location_cost_ratio": solved.location_cost_ratio,
            "wage_ratio": solved.wage_ratio,
            "credit_factor": solved.credit_factor,
        },
        "residuals": result.residuals,
    }
    _write_text(
        os.path.join(args.out, "calibration_report.json"),
        json.dumps(payload, indent=2, sort_keys=True) + "\n",
    )
    for name, value in payload["solved"].items():
        print(f"{name} = {value:.12g}")
    return 0


def _cmd_report(args: argparse.Namespace) -> int:
    from .figures import write_report_figures

    p = _parameters(args)
    scenarios = _select_scenarios(args)
    ledgers, reports = _simulate(p, scenarios)
    _write_run_outputs(args, scenarios, ledgers, reports)
    sweeps = []
    for parameter in sorted(DEFAULT_GRIDS):
        result = sweep_1d(p, scenarios, parameter)
        _write_sweep_outputs(args, result)
        sweeps.append(result)
    _print_summary(reports)
    for result in sweeps:
        _print_thresholds(result)
    figure_paths = write_report_figures(args.out, ledgers, reports, sweeps)
    for path in figure_paths:
        print(f"wrote {path}")
    return 0


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CalibrationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
