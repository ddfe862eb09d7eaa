"""Financial metrics over a ledger: NPV, IRR, ROI, break-even, and BCD.

NPV discounts the year-0 investment and yearly nets; IRR is recovered by
bracketing bisection and is only reported for investment-shaped flows (a
negative prefix followed by non-negative flows with a positive tail), the
single case where the root is unique. Break-even compares cumulative cost
and cumulative revenue-plus-savings curves without discounting.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

from .ledger import Ledger
from .params import ParameterSet, ScenarioKind


def npv(flows: Sequence[float], rate: float | Sequence[float]) -> float:
    """Net present value of flows indexed from year 0.

    rate may be a scalar applied every year or a per-year schedule
    compounded multiplicatively; schedule entry k discounts year k+1.
    """
    if isinstance(rate, (int, float)):
        if rate <= -1.0:
            raise ValueError(f"discount rate must exceed -1, got {rate}")
        total = 0.0
        factor = 1.0
        for t, flow in enumerate(flows):
            if t > 0:
                factor *= 1.0 + rate
            total += flow / factor
        return total
    schedule = list(rate)
    if len(schedule) < len(flows) - 1:
        raise ValueError(
            f"discount schedule has {len(schedule)} rates but flows span "
            f"{len(flows) - 1} years"
        )
    for k, r in enumerate(schedule):
        if r <= -1.0:
            raise ValueError(f"discount rate must exceed -1, got {r} at year {k + 1}")
    total = 0.0
    factor = 1.0
    for t, flow in enumerate(flows):
        if t > 0:
            factor *= 1.0 + schedule[t - 1]
        total += flow / factor
    return total


@dataclass(frozen=True)
class IrrResult:
    """IRR value plus the reason when it is undefined."""

    value: float | None
    # "ok", "all_zero", "no_sign_change", "multiple_sign_changes",
    # or "not_investment_shaped"
    status: str

    @property
    def defined(self) -> bool:
        return self.status == "ok"


def _sign_pattern(flows: Sequence[float]) -> str:
    signs = [1 if f > 0 else -1 for f in flows if f != 0.0]
    if not signs:
        return "all_zero"
    changes = sum(1 for a, b in zip(signs, signs[1:]) if a != b)
    if changes == 0:
        return "no_sign_change"
    if changes > 1:
        return "multiple_sign_changes"
    # exactly one change: must run negative then positive for the money-out,
    # money-in shape whose IRR is unique
    if signs[0] < 0:
        return "ok"
    return "not_investment_shaped"


def irr(flows: Sequence[float]) -> IrrResult:
    """Internal rate of return via bracketing bisection.

    Defined only for flows with a single negative-to-positive sign change.
    The bracket collapses to machine resolution, so away from the pole at
    -1 the result satisfies |npv(flows, rate)| <= |flows[0]| * 1e-9.
    """
    flows = list(flows)
    status = _sign_pattern(flows)
    if status != "ok":
        return IrrResult(value=None, status=status)

    # near -1 the positive tail dominates and NPV diverges to +inf; for
    # large rates NPV tends to the (negative) year-0 flow, or to the first
    # negative flow's sign when year 0 is zero
    lo = -1.0 + 1e-12
    hi = 1.0
    while npv(flows, hi) > 0.0:
        hi *= 2.0
        if hi > 1e9:
            return IrrResult(value=None, status="no_sign_change")
    # bisect until the bracket collapses well below reporting precision
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        if npv(flows, mid) > 0.0:
            lo = mid
        else:
            hi = mid
        if (hi - lo) <= 1e-13 * max(1.0, abs(mid)):
            break
    return IrrResult(value=0.5 * (lo + hi), status="ok")


def break_even(
    cumulative_costs: Sequence[float],
    cumulative_revenues: Sequence[float],
    start_year: int = 1,
) -> float | None:
    """First (fractional) year where cumulative revenues cover costs.

    The two series must be aligned, entry i describing year start_year + i.
    The crossing is linearly interpolated inside the year it happens in;
    None means the curves never cross within the series.
    """
    if len(cumulative_costs) != len(cumulative_revenues):
        raise ValueError("cumulative series must have equal length")
    prev_diff: float | None = None
    for i, (cost, revenue) in enumerate(
        zip(cumulative_costs, cumulative_revenues)
    ):
        diff = revenue - cost
        year = start_year + i
        if diff >= 0.0:
            if prev_diff is None or diff == 0.0:
                return float(year)
            return (year - 1) + (-prev_diff) / (diff - prev_diff)
        prev_diff = diff
    return None


@dataclass(frozen=True)
class RoiMetrics:
    per_year_pct: tuple[float, ...]
    total_pct: float
    average_pct: float


def roi_metrics(ledger: Ledger, include_savings: bool = True) -> RoiMetrics:
    """Yearly return on the initial investment, in percent.

    Each year's return is that year's net inflow over the year-0
    investment; yearly operating costs are deducted in the numerator, never
    added to the denominator. Savings count as inflows for land-application
    scenarios unless explicitly excluded.
    """
    investment = ledger.capital.total
    count_savings = (
        include_savings
        and ledger.scenario.kind is ScenarioKind.LAND_APPLICATION
    )
    per_year = []
    for line in ledger.years:
        inflow = line.revenues.total()
        if count_savings:
            inflow += line.savings.total()
        per_year.append((inflow - line.costs.total()) / investment * 100.0)
    total = 0.0
    for value in per_year:
        total += value
    return RoiMetrics(
        per_year_pct=tuple(per_year),
        total_pct=total,
        average_pct=total / len(per_year),
    )


def benefit_cost(ledger: Ledger) -> float:
    """Life-cycle benefits minus life-cycle costs (investment included)."""
    return ledger.totals.benefit - ledger.totals.cost


@dataclass(frozen=True)
class MetricsReport:
    scenario_label: str
    discount_rate: float | tuple[float, ...]
    npv: float
    irr: IrrResult
    break_even_years: float | None
    roi: RoiMetrics
    benefit_cost_delta: float
    revenue_cost_ratio: float
    totals_cost: float
    totals_revenue: float
    totals_savings: float
    investment: float

    def to_json_dict(self) -> dict:
        discount: object = self.discount_rate
        if isinstance(discount, tuple):
            discount = list(discount)
        return {
            "scenario": self.scenario_label,
            "discount_rate": discount,
            "npv": self.npv,
            # sentinels are explicit: a missing IRR or break-even is
            # reported as a reason, never as a bare null
            "irr": self.irr.value,
            "irr_status": self.irr.status,
            "break_even_years": self.break_even_years,
            "break_even_status": (
                "reached" if self.break_even_years is not None else "never"
            ),
            "roi_per_year_pct": list(self.roi.per_year_pct),
            "roi_total_pct": self.roi.total_pct,
            "roi_average_pct": self.roi.average_pct,
            "benefit_cost_delta": self.benefit_cost_delta,
            "revenue_cost_ratio": self.revenue_cost_ratio,
            "investment": self.investment,
            "total_cost": self.totals_cost,
            "total_revenue": self.totals_revenue,
            "total_savings": self.totals_savings,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=True) + "\n"


def compute_metrics(
    ledger: Ledger,
    p: ParameterSet,
    discount_rate: float | Sequence[float] | None = None,
) -> MetricsReport:
    """Assemble every metric for one scenario ledger."""
    if discount_rate is None:
        rate: float | tuple[float, ...] = p.resolved_discount_rate()
    elif isinstance(discount_rate, (int, float)):
        rate = float(discount_rate)
    else:
        rate = tuple(discount_rate)

    flows = ledger.cash_flows()
    present_value = npv(flows, rate)
    irr_result = irr(flows)

    cost_cum = [ledger.capital.total]
    revenue_cum = [0.0]
    for line in ledger.years:
        cost_cum.append(cost_cum[-1] + line.costs.total())
        revenue_cum.append(
            revenue_cum[-1] + line.revenues.total() + line.savings.total()
        )
    crossing = break_even(cost_cum, revenue_cum, start_year=0)

    roi = roi_metrics(ledger)
    return MetricsReport(
        scenario_label=ledger.scenario.label,
        discount_rate=rate,
        npv=present_value,
        irr=irr_result,
        break_even_years=crossing,
        roi=roi,
        benefit_cost_delta=benefit_cost(ledger),
        revenue_cost_ratio=ledger.totals.revenue / ledger.totals.cost,
        totals_cost=ledger.totals.cost,
        totals_revenue=ledger.totals.revenue,
        totals_savings=ledger.totals.savings,
        investment=ledger.capital.total,
    )
