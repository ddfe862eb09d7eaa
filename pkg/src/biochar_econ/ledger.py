"""Life-cycle cash-flow ledger: capital stack, yearly lines, and totals.

Price paths: every cost line escalates with inflation_rate. Carbon credit
revenue follows its own appreciation path (credit_price_growth, defaulting
to the nominal interest rate). Yield-uplift revenue, biochar sales, and the
input savings are valued at constant base-year prices unless
benefit_price_growth says otherwise. Totals are accumulated in year order.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass

from .params import (
    ParameterSet,
    ScenarioKind,
    ScenarioSpec,
    adjusted_reference_costs,
)
from .production import MassBalance, mass_balance


@dataclass(frozen=True)
class CapitalStack:
    """One-time investment, spent at year zero."""

    equipment: float      # installed pyrolysis plant, scaled and localised
    indirect: float       # indirect costs plus working capital
    planning: float       # planning and design share of equipment+indirect
    permitting: float     # permit share plus one-time registry validation
    total: float


@dataclass(frozen=True)
class YearCosts:
    maintenance: float
    operation: float
    labor: float
    credit_certification: float
    land_application: float

    def total(self) -> float:
        return (
            self.maintenance
            + self.operation
            + self.labor
            + self.credit_certification
            + self.land_application
        )


@dataclass(frozen=True)
class YearRevenues:
    biochar_sales: float
    carbon_credits: float
    yield_uplift: float

    def total(self) -> float:
        return self.biochar_sales + self.carbon_credits + self.yield_uplift


@dataclass(frozen=True)
class YearSavings:
    fertilizer: float
    crop_management: float

    def total(self) -> float:
        return self.fertilizer + self.crop_management


@dataclass(frozen=True)
class YearLine:
    year: int
    costs: YearCosts
    revenues: YearRevenues
    savings: YearSavings
    net: float             # revenues + savings - costs for this year
    cumulative_net: float  # net summed from year 1, minus the investment


@dataclass(frozen=True)
class LedgerTotals:
    cost: float     # investment plus all yearly costs
    revenue: float
    savings: float
    benefit: float  # revenue + savings


@dataclass(frozen=True)
class Ledger:
    scenario: ScenarioSpec
    mass: MassBalance
    capital: CapitalStack
    years: tuple[YearLine, ...]
    totals: LedgerTotals

    def cash_flows(self) -> list[float]:
        """Year-0 investment outflow followed by yearly net flows."""
        return [-self.capital.total] + [line.net for line in self.years]


def capital_stack(p: ParameterSet, capacity_t: float) -> CapitalStack:
    """Build the year-zero investment for a plant sized to capacity_t."""
    costs = adjusted_reference_costs(p, capacity_t)
    direct_indirect = costs.installed + costs.indirect
    planning = p.planning_pct * direct_indirect
    # the registry charges its review fee once during project validation
    # and then again every operating year (see year_line)
    permitting = p.permit_pct * direct_indirect + p.credit_review_fee
    return CapitalStack(
        equipment=costs.installed,
        indirect=costs.indirect,
        planning=planning,
        permitting=permitting,
        total=direct_indirect + planning + permitting,
    )


@dataclass(frozen=True)
class _BaseYear:
    """Year-1 amounts before any escalation."""

    costs: YearCosts
    revenues: YearRevenues
    savings: YearSavings


def _base_year(
    p: ParameterSet,
    scenario: ScenarioSpec,
    mass: MassBalance,
    equipment_cost: float,
) -> _BaseYear:
    costs_ref = adjusted_reference_costs(p, mass.bagasse_available_t)
    costs = YearCosts(
        maintenance=p.maintenance_pct * equipment_cost,
        operation=costs_ref.operation_per_year,
        labor=costs_ref.labor_per_year,
        credit_certification=(
            mass.credits_tco2e * p.credit_issuance_fee + p.credit_review_fee
        ),
        land_application=mass.treated_ha * p.land_app_cost,
    )
    if scenario.kind is ScenarioKind.LAND_APPLICATION:
        saleable_t = mass.surplus_t
    else:
        saleable_t = mass.biochar_t
    revenues = YearRevenues(
        biochar_sales=saleable_t * p.biochar_price,
        carbon_credits=mass.credits_tco2e * p.credit_price,
        yield_uplift=(
            mass.treated_ha * p.sugarcane_yield * p.yield_uplift
            * p.sugarcane_price
        ),
    )
    savings = YearSavings(
        fertilizer=(
            mass.treated_ha * p.fertilizer_cost
            * p.fertilizer_savings_fraction
        ),
        crop_management=(
            mass.treated_ha * p.crop_mgmt_cost * p.crop_mgmt_savings_fraction
        ),
    )
    return _BaseYear(costs=costs, revenues=revenues, savings=savings)


def year_line(
    p: ParameterSet,
    scenario: ScenarioSpec,
    mass: MassBalance,
    equipment_cost: float,
    year: int,
) -> tuple[YearCosts, YearRevenues, YearSavings]:
    """Escalated cost, revenue, and savings lines for one year (1-based)."""
    if year < 1:
        raise ValueError(f"year must be >= 1, got {year}")
    base = _base_year(p, scenario, mass, equipment_cost)
    cost_f = (1.0 + p.inflation_rate) ** (year - 1)
    credit_f = (1.0 + p.resolved_credit_price_growth()) ** (year - 1)
    benefit_f = (1.0 + p.benefit_price_growth) ** (year - 1)
    costs = YearCosts(
        maintenance=base.costs.maintenance * cost_f,
        operation=base.costs.operation * cost_f,
        labor=base.costs.labor * cost_f,
        credit_certification=base.costs.credit_certification * cost_f,
        land_application=base.costs.land_application * cost_f,
    )
    revenues = YearRevenues(
        biochar_sales=base.revenues.biochar_sales * benefit_f,
        carbon_credits=base.revenues.carbon_credits * credit_f,
        yield_uplift=base.revenues.yield_uplift * benefit_f,
    )
    savings = YearSavings(
        fertilizer=base.savings.fertilizer * benefit_f,
        crop_management=base.savings.crop_management * benefit_f,
    )
    return costs, revenues, savings


def build_ledger(p: ParameterSet, scenario: ScenarioSpec) -> Ledger:
    """Run the full pipeline for one scenario: mass balance to totals."""
    mass = mass_balance(p, scenario)
    capital = capital_stack(p, mass.bagasse_available_t)

    years: list[YearLine] = []
    cumulative = -capital.total
    cost_total = capital.total
    revenue_total = 0.0
    savings_total = 0.0
    for year in range(1, p.horizon_years + 1):
        costs, revenues, savings = year_line(
            p, scenario, mass, capital.equipment, year
        )
        net = revenues.total() + savings.total() - costs.total()
        cumulative += net
        years.append(
            YearLine(
                year=year,
                costs=costs,
                revenues=revenues,
                savings=savings,
                net=net,
                cumulative_net=cumulative,
            )
        )
        cost_total += costs.total()
        revenue_total += revenues.total()
        savings_total += savings.total()

    totals = LedgerTotals(
        cost=cost_total,
        revenue=revenue_total,
        savings=savings_total,
        benefit=revenue_total + savings_total,
    )
    return Ledger(
        scenario=scenario,
        mass=mass,
        capital=capital,
        years=tuple(years),
        totals=totals,
    )


# Stable CSV column contract: one row per operating year.
LEDGER_CSV_COLUMNS: tuple[str, ...] = (
    "year",
    "maintenance",
    "operation",
    "labor",
    "credit_certification",
    "land_application",
    "biochar_sales",
    "carbon_credits",
    "yield_uplift",
    "fertilizer_savings",
    "crop_management_savings",
    "net",
    "cumulative_net",
)


def ledger_to_csv(ledger: Ledger) -> str:
    """Render yearly lines as CSV, currency rounded to whole cents."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(LEDGER_CSV_COLUMNS)
    for line in ledger.years:
        writer.writerow(
            [line.year]
            + [
                f"{value:.2f}"
                for value in (
                    line.costs.maintenance,
                    line.costs.operation,
                    line.costs.labor,
                    line.costs.credit_certification,
                    line.costs.land_application,
                    line.revenues.biochar_sales,
                    line.revenues.carbon_credits,
                    line.revenues.yield_uplift,
                    line.savings.fertilizer,
                    line.savings.crop_management,
                    line.net,
                    line.cumulative_net,
                )
            ]
        )
    return buf.getvalue()


def load_ledger_csv(text: str) -> list[dict[str, float]]:
    """Parse ledger CSV back into numeric rows keyed by column name."""
    reader = csv.DictReader(io.StringIO(text))
    if tuple(reader.fieldnames or ()) != LEDGER_CSV_COLUMNS:
        raise ValueError(
            f"unexpected ledger columns: {reader.fieldnames!r}"
        )
    rows = []
    for raw in reader:
        row = {key: float(value) for key, value in raw.items()}
        row["year"] = int(raw["year"])
        rows.append(row)
    return rows


def ledger_to_json_dict(ledger: Ledger) -> dict:
    """Full-precision JSON-ready view of the ledger."""
    return {
        "scenario": {
            "label": ledger.scenario.label,
            "kind": ledger.scenario.kind.value,
            "farm_size_ha": ledger.scenario.farm_size_ha,
        },
        "mass_balance": asdict(ledger.mass),
        "capital": asdict(ledger.capital),
        "years": [
            {
                "year": line.year,
                "costs": asdict(line.costs),
                "revenues": asdict(line.revenues),
                "savings": asdict(line.savings),
                "net": line.net,
                "cumulative_net": line.cumulative_net,
            }
            for line in ledger.years
        ],
        "totals": asdict(ledger.totals),
    }


def ledger_to_json(ledger: Ledger) -> str:
    return json.dumps(ledger_to_json_dict(ledger), indent=2, sort_keys=True) + "\n"
