"""Report figures rendered to files next to the CSV/JSON output.

Everything draws on the Agg backend so report generation works headless;
figures are plain matplotlib with a fixed color cycle so repeated runs
produce the same images.
"""

from __future__ import annotations

import os
from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

from .ledger import Ledger  # noqa: E402
from .metrics import MetricsReport  # noqa: E402
from .sweep import SweepResult  # noqa: E402

_CYCLE = plt.cm.tab10.colors

plt.rcParams.update(
    {
        "figure.dpi": 110,
        "axes.grid": True,
        "grid.alpha": 0.3,
        "axes.axisbelow": True,
        "font.size": 9,
    }
)


def _million(values: Sequence[float]) -> list[float]:
    return [v / 1e6 for v in values]


def cost_breakdown_figure(ledgers: Sequence[Ledger]) -> plt.Figure:
    """Stacked life-cycle cost composition per scenario, millions."""
    labels = [ledger.scenario.label for ledger in ledgers]
    components = [
        ("equipment", lambda l: l.capital.equipment),
        ("indirect", lambda l: l.capital.indirect),
        ("planning", lambda l: l.capital.planning),
        ("permitting", lambda l: l.capital.permitting),
        ("maintenance", lambda l: sum(y.costs.maintenance for y in l.years)),
        ("operation", lambda l: sum(y.costs.operation for y in l.years)),
        ("labor", lambda l: sum(y.costs.labor for y in l.years)),
        (
            "certification",
            lambda l: sum(y.costs.credit_certification for y in l.years),
        ),
        (
            "land application",
            lambda l: sum(y.costs.land_application for y in l.years),
        ),
    ]
    fig, ax = plt.subplots(figsize=(7.5, 4.5), constrained_layout=True)
    bottoms = [0.0] * len(ledgers)
    for (name, getter), color in zip(components, _CYCLE):
        heights = _million([getter(ledger) for ledger in ledgers])
        ax.bar(labels, heights, bottom=bottoms, label=name, color=color)
        bottoms = [b + h for b, h in zip(bottoms, heights)]
    ax.set_ylabel("life-cycle cost [M$]")
    ax.set_title("Cost composition over the project horizon")
    ax.legend(fontsize=7, ncol=3)
    return fig


def cumulative_curves_figure(
    ledgers: Sequence[Ledger], reports: Sequence[MetricsReport]
) -> plt.Figure:
    """Cumulative cost vs revenue-plus-savings curves with break-even marks."""
    cols = min(3, len(ledgers))
    rows = (len(ledgers) + cols - 1) // cols
    fig, axes = plt.subplots(
        rows,
        cols,
        figsize=(3.2 * cols, 2.8 * rows),
        constrained_layout=True,
        squeeze=False,
    )
    for idx, (ledger, report) in enumerate(zip(ledgers, reports)):
        ax = axes[idx // cols][idx % cols]
        years = [0] + [line.year for line in ledger.years]
        cost_cum = [ledger.capital.total]
        gain_cum = [0.0]
        for line in ledger.years:
            cost_cum.append(cost_cum[-1] + line.costs.total())
            gain_cum.append(
                gain_cum[-1] + line.revenues.total() + line.savings.total()
            )
        ax.plot(years, _million(cost_cum), color=_CYCLE[3], label="costs")
        ax.plot(
            years, _million(gain_cum), color=_CYCLE[0],
            label="revenues + savings",
        )
        if report.break_even_years is not None:
            ax.axvline(
                report.break_even_years, color="0.4", linestyle="--",
                linewidth=1,
            )
        ax.set_title(ledger.scenario.label, fontsize=9)
        ax.set_xlabel("year")
        ax.set_ylabel("cumulative [M$]")
        if idx == 0:
            ax.legend(fontsize=7)
    for idx in range(len(ledgers), rows * cols):
        axes[idx // cols][idx % cols].set_visible(False)
    return fig


def roi_figure(reports: Sequence[MetricsReport]) -> plt.Figure:
    """Per-year return on investment for every scenario."""
    fig, ax = plt.subplots(figsize=(7.0, 4.2), constrained_layout=True)
    for report, color in zip(reports, _CYCLE):
        years = range(1, len(report.roi.per_year_pct) + 1)
        ax.plot(
            years, report.roi.per_year_pct, color=color, marker="o",
            markersize=2.5, label=report.scenario_label,
        )
    ax.set_xlabel("year")
    ax.set_ylabel("return on investment [%/y]")
    ax.set_title("Yearly return on the initial investment")
    ax.legend(fontsize=7)
    return fig


def npv_irr_figure(reports: Sequence[MetricsReport]) -> plt.Figure:
    """Paired bars: NPV in millions and IRR in percent."""
    labels = [report.scenario_label for report in reports]
    fig, (ax_npv, ax_irr) = plt.subplots(
        1, 2, figsize=(8.5, 3.6), constrained_layout=True
    )
    npvs = _million([report.npv for report in reports])
    colors = [_CYCLE[0] if v >= 0 else _CYCLE[3] for v in npvs]
    ax_npv.bar(labels, npvs, color=colors)
    ax_npv.axhline(0.0, color="0.2", linewidth=0.8)
    ax_npv.set_ylabel("net present value [M$]")
    ax_npv.tick_params(axis="x", rotation=45)

    irrs = [
        report.irr.value * 100.0 if report.irr.defined else 0.0
        for report in reports
    ]
    ax_irr.bar(labels, irrs, color=_CYCLE[2])
    ax_irr.set_ylabel("internal rate of return [%]")
    ax_irr.tick_params(axis="x", rotation=45)
    for idx, report in enumerate(reports):
        if not report.irr.defined:
            ax_irr.text(
                idx, 0.5, report.irr.status, rotation=90,
                ha="center", va="bottom", fontsize=6,
            )
    return fig


def sweep_figure(result: SweepResult) -> plt.Figure:
    """NPV against the swept parameter, one line per scenario."""
    fig, ax = plt.subplots(figsize=(7.0, 4.2), constrained_layout=True)
    scenarios = []
    for row in result.rows:
        if row.scenario not in scenarios:
            scenarios.append(row.scenario)
    for label, color in zip(scenarios, _CYCLE):
        series = [row.npv for row in result.rows if row.scenario == label]
        ax.plot(
            result.grid, _million(series), color=color, marker="o",
            markersize=2.5, label=label,
        )
    ax.axhline(0.0, color="0.2", linewidth=0.8)
    ax.set_xlabel(result.parameter)
    ax.set_ylabel("net present value [M$]")
    ax.set_title(f"NPV sensitivity to {result.parameter}")
    ax.legend(fontsize=7)
    return fig


def save_figure(fig: plt.Figure, path: str) -> None:
    fig.savefig(path, dpi=150)
    plt.close(fig)


def write_report_figures(
    out_dir: str,
    ledgers: Sequence[Ledger],
    reports: Sequence[MetricsReport],
    sweeps: Sequence[SweepResult],
) -> list[str]:
    """Render the full figure set into out_dir, returning written paths."""
    os.makedirs(out_dir, exist_ok=True)
    written = []

    def emit(fig: plt.Figure, name: str) -> None:
        path = os.path.join(out_dir, name)
        save_figure(fig, path)
        written.append(path)

    emit(cost_breakdown_figure(ledgers), "cost_breakdown.png")
    emit(cumulative_curves_figure(ledgers, reports), "cumulative_curves.png")
    emit(roi_figure(reports), "roi_per_year.png")
    emit(npv_irr_figure(reports), "npv_irr.png")
    for result in sweeps:
        emit(sweep_figure(result), f"sweep_{result.parameter}.png")
    return written
