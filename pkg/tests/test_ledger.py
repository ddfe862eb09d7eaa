"""Cash-flow ledger tests: capital stack, yearly lines, totals, round-trips.

Frozen numbers were produced by an independent reimplementation of the
capital formulas and a hand-checked year-1 statement.
"""

import dataclasses
import json

import pytest
from hypothesis import given, strategies as st

from biochar_econ import (
    LEDGER_CSV_COLUMNS,
    ParameterSet,
    ScenarioKind,
    ScenarioSpec,
    build_ledger,
    capital_stack,
    ledger_to_csv,
    ledger_to_json,
    ledger_to_json_dict,
    load_ledger_csv,
    mass_balance,
    year_line,
)

# frozen: calibrated capital stacks (equipment, indirect, planning,
# permitting, total) per farm size
CAPITAL = {
    10000.0: (
        39500000.0,
        14013144.195731388,
        2675657.2097865697,
        1072162.8839146278,
        57260964.289432585,
    ),
    20000.0: (
        64167939.3121426,
        22764419.906936586,
        4346617.96095396,
        1740547.184381584,
        93019524.36441475,
    ),
    50000.0: (
        121864187.88720188,
        43232922.4597231,
        8254855.517346248,
        3303842.206938499,
        176655808.07120973,
    ),
}


def _scenario(ha, kind=ScenarioKind.DIRECT_SALE, label="t"):
    return ScenarioSpec(farm_size_ha=ha, kind=kind, label=label)


@pytest.mark.parametrize("ha", sorted(CAPITAL))
def test_capital_stack_frozen_values(calibrated, ha):
    capacity = mass_balance(calibrated, _scenario(ha)).bagasse_available_t
    stack = capital_stack(calibrated, capacity)
    equipment, indirect, planning, permitting, total = CAPITAL[ha]
    assert stack.equipment == pytest.approx(equipment, rel=1e-8)
    assert stack.indirect == pytest.approx(indirect, rel=1e-8)
    assert stack.planning == pytest.approx(planning, rel=1e-8)
    assert stack.permitting == pytest.approx(permitting, rel=1e-8)
    assert stack.total == pytest.approx(total, rel=1e-8)


def test_capital_stack_composition(base_params):
    stack = capital_stack(base_params, base_params.ref_capacity)
    base = stack.equipment + stack.indirect
    assert stack.planning == pytest.approx(0.05 * base)
    assert stack.permitting == pytest.approx(0.02 * base + 1900.0)
    assert stack.total == pytest.approx(
        stack.equipment + stack.indirect + stack.planning + stack.permitting
    )


def test_year_one_statement_small_land_application(calibrated):
    # frozen year-1 line for the small land-application farm with the
    # certified-carbon ratio pinned at 1.2
    p = dataclasses.replace(calibrated, credit_factor=1.2)
    scenario = _scenario(10000.0, ScenarioKind.LAND_APPLICATION)
    mass = mass_balance(p, scenario)
    assert mass.credits_tco2e == pytest.approx(52314.73632, rel=1e-9)
    equipment = capital_stack(p, mass.bagasse_available_t).equipment
    costs, revenues, savings = year_line(p, scenario, mass, equipment, 1)
    assert costs.maintenance == pytest.approx(790000.0, rel=1e-8)
    assert costs.operation == pytest.approx(2138469.5471, rel=1e-8)
    assert costs.labor == pytest.approx(260509.9532, rel=1e-8)
    assert costs.credit_certification == pytest.approx(17594.4209, rel=1e-8)
    assert costs.land_application == pytest.approx(3200000.0, rel=1e-8)
    assert revenues.biochar_sales == 0.0
    assert revenues.carbon_credits == pytest.approx(9364337.8013, rel=1e-8)
    assert revenues.yield_uplift == pytest.approx(3382830.0, rel=1e-8)
    assert savings.fertilizer == pytest.approx(340000.0, rel=1e-8)
    assert savings.crop_management == pytest.approx(4370000.0, rel=1e-8)


def test_direct_sale_skips_field_lines(calibrated):
    scenario = _scenario(10000.0)
    mass = mass_balance(calibrated, scenario)
    equipment = capital_stack(calibrated, mass.bagasse_available_t).equipment
    costs, revenues, savings = year_line(
        calibrated, scenario, mass, equipment, 1
    )
    assert costs.land_application == 0.0
    assert revenues.yield_uplift == 0.0
    assert savings.total() == 0.0
    # with a zero biochar price the only revenue is the credit stream
    assert revenues.biochar_sales == 0.0
    assert revenues.carbon_credits > 0.0


def test_surplus_sells_when_biochar_priced(calibrated):
    p = dataclasses.replace(calibrated, biochar_price=100.0)
    scenario = _scenario(10000.0, ScenarioKind.LAND_APPLICATION)
    mass = mass_balance(p, scenario)
    equipment = capital_stack(p, mass.bagasse_available_t).equipment
    _, revenues, _ = year_line(p, scenario, mass, equipment, 1)
    assert revenues.biochar_sales == pytest.approx(mass.surplus_t * 100.0)


@given(year=st.integers(min_value=1, max_value=40))
def test_each_stream_escalates_at_its_own_rate(year):
    p = ParameterSet(
        credit_price_growth=0.07,
        benefit_price_growth=0.02,
        biochar_price=50.0,
    )
    scenario = _scenario(10000.0, ScenarioKind.LAND_APPLICATION)
    mass = mass_balance(p, scenario)
    equipment = capital_stack(p, mass.bagasse_available_t).equipment
    base_c, base_r, base_s = year_line(p, scenario, mass, equipment, 1)
    costs, revenues, savings = year_line(p, scenario, mass, equipment, year)
    cost_f = 1.03 ** (year - 1)
    credit_f = 1.07 ** (year - 1)
    benefit_f = 1.02 ** (year - 1)
    assert costs.total() == pytest.approx(base_c.total() * cost_f, rel=1e-9)
    assert revenues.carbon_credits == pytest.approx(
        base_r.carbon_credits * credit_f, rel=1e-9
    )
    assert revenues.yield_uplift == pytest.approx(
        base_r.yield_uplift * benefit_f, rel=1e-9
    )
    assert revenues.biochar_sales == pytest.approx(
        base_r.biochar_sales * benefit_f, rel=1e-9
    )
    assert savings.total() == pytest.approx(
        base_s.total() * benefit_f, rel=1e-9
    )


def test_credit_growth_defaults_to_interest_rate(calibrated):
    scenario = _scenario(10000.0)
    mass = mass_balance(calibrated, scenario)
    equipment = capital_stack(calibrated, mass.bagasse_available_t).equipment
    _, year1, _ = year_line(calibrated, scenario, mass, equipment, 1)
    _, year5, _ = year_line(calibrated, scenario, mass, equipment, 5)
    assert year5.carbon_credits / year1.carbon_credits == pytest.approx(
        (1.0 + calibrated.interest_rate) ** 4, rel=1e-12
    )


def test_year_line_rejects_year_zero(calibrated):
    scenario = _scenario(10000.0)
    mass = mass_balance(calibrated, scenario)
    with pytest.raises(ValueError):
        year_line(calibrated, scenario, mass, 1.0, 0)


def test_ledger_totals_are_internally_consistent(calibrated):
    ledger = build_ledger(
        calibrated, _scenario(10000.0, ScenarioKind.LAND_APPLICATION)
    )
    assert len(ledger.years) == calibrated.horizon_years
    cost_sum = ledger.capital.total + sum(
        line.costs.total() for line in ledger.years
    )
    revenue_sum = sum(line.revenues.total() for line in ledger.years)
    savings_sum = sum(line.savings.total() for line in ledger.years)
    assert ledger.totals.cost == pytest.approx(cost_sum, rel=1e-12)
    assert ledger.totals.revenue == pytest.approx(revenue_sum, rel=1e-12)
    assert ledger.totals.savings == pytest.approx(savings_sum, rel=1e-12)
    assert ledger.totals.benefit == pytest.approx(
        revenue_sum + savings_sum, rel=1e-12
    )
    assert ledger.years[-1].cumulative_net == pytest.approx(
        ledger.totals.benefit - ledger.totals.cost, rel=1e-9
    )


def test_cash_flows_shape(calibrated):
    ledger = build_ledger(calibrated, _scenario(10000.0))
    flows = ledger.cash_flows()
    assert len(flows) == calibrated.horizon_years + 1
    assert flows[0] == -ledger.capital.total
    assert flows[1:] == [line.net for line in ledger.years]


def test_ledger_csv_round_trip(calibrated):
    ledger = build_ledger(
        calibrated, _scenario(10000.0, ScenarioKind.LAND_APPLICATION)
    )
    text = ledger_to_csv(ledger)
    lines = text.splitlines()
    assert lines[0] == ",".join(LEDGER_CSV_COLUMNS)
    assert len(lines) == 1 + calibrated.horizon_years
    rows = load_ledger_csv(text)
    for row, line in zip(rows, ledger.years):
        assert row["year"] == line.year
        assert row["maintenance"] == pytest.approx(
            line.costs.maintenance, abs=0.005
        )
        assert row["carbon_credits"] == pytest.approx(
            line.revenues.carbon_credits, abs=0.005
        )
        assert row["cumulative_net"] == pytest.approx(
            line.cumulative_net, abs=0.005
        )


def test_load_ledger_csv_rejects_foreign_header():
    with pytest.raises(ValueError):
        load_ledger_csv("a,b,c\n1,2,3\n")


def test_ledger_json_structure(calibrated):
    ledger = build_ledger(
        calibrated, _scenario(10000.0, ScenarioKind.LAND_APPLICATION)
    )
    data = ledger_to_json_dict(ledger)
    assert data["scenario"]["kind"] == "land_application"
    assert data["capital"]["total"] == ledger.capital.total
    assert len(data["years"]) == calibrated.horizon_years
    assert data["years"][0]["costs"]["maintenance"] == pytest.approx(
        ledger.years[0].costs.maintenance
    )
    text = ledger_to_json(ledger)
    assert text.endswith("\n")
    assert json.loads(text) == json.loads(ledger_to_json(ledger))
