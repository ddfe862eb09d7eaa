"""Financial metric tests: NPV, IRR, break-even, ROI, report assembly.

The quadratic IRR below has the closed form (sqrt(27600) - 60) / 120 for
1/(1+r); the frozen scenario metrics come from the same independent
script as the ledger numbers.
"""

import dataclasses
import json
import math

import pytest
from hypothesis import assume, given, strategies as st

from biochar_econ import (
    ScenarioKind,
    ScenarioSpec,
    break_even,
    build_ledger,
    compute_metrics,
    irr,
    npv,
    roi_metrics,
)


def test_npv_zero_rate_is_plain_sum():
    assert npv([-100.0, 60.0, 60.0], 0.0) == pytest.approx(20.0, rel=1e-12)


def test_npv_scalar_rate():
    value = npv([-100.0, 60.0, 60.0], 0.10)
    assert value == pytest.approx(-100.0 + 60.0 / 1.1 + 60.0 / 1.21, rel=1e-12)


def test_npv_schedule_compounds_per_year():
    value = npv([-100.0, 60.0, 60.0], [0.10, 0.20])
    expected = -100.0 + 60.0 / 1.1 + 60.0 / (1.1 * 1.2)
    assert value == pytest.approx(expected, rel=1e-12)
    # a flat schedule equals the scalar rate
    assert npv([-100.0, 60.0, 60.0], [0.1, 0.1]) == pytest.approx(
        npv([-100.0, 60.0, 60.0], 0.1), rel=1e-12
    )


def test_npv_rejects_bad_rates():
    with pytest.raises(ValueError):
        npv([-1.0, 2.0], -1.0)
    with pytest.raises(ValueError):
        npv([-1.0, 2.0, 3.0], [0.05])
    with pytest.raises(ValueError):
        npv([-1.0, 2.0], [-1.5])


def test_irr_quadratic_closed_form():
    result = irr([-100.0, 60.0, 60.0])
    assert result.defined
    x = (math.sqrt(27600.0) - 60.0) / 120.0
    assert result.value == pytest.approx(1.0 / x - 1.0, rel=1e-9)
    assert abs(npv([-100.0, 60.0, 60.0], result.value)) <= 100.0 * 1e-9


def test_irr_zero_when_flows_just_repay():
    result = irr([-100.0, 50.0, 50.0])
    assert result.defined
    assert result.value == pytest.approx(0.0, abs=1e-10)


def test_irr_undefined_cases():
    assert irr([0.0, 0.0]).status == "all_zero"
    assert irr([-1.0, -2.0]).status == "no_sign_change"
    assert irr([1.0, 2.0]).status == "no_sign_change"
    assert irr([1.0, -2.0]).status == "not_investment_shaped"
    assert irr([-1.0, 3.0, -3.0, 2.0]).status == "multiple_sign_changes"
    for case in ([0.0, 0.0], [-1.0, -2.0], [1.0, -2.0]):
        assert irr(case).value is None
        assert not irr(case).defined


def test_break_even_interpolates_inside_the_crossing_year():
    # deficit 70 at year 3 flips to surplus 10 at year 4
    value = break_even([100.0, 150.0, 200.0, 250.0], [0.0, 80.0, 130.0, 260.0])
    assert value == pytest.approx(3.875, rel=1e-12)


def test_break_even_exact_touch_returns_that_year():
    assert break_even([100.0, 100.0], [50.0, 100.0]) == 2.0


def test_break_even_immediate():
    assert break_even([10.0, 20.0], [15.0, 30.0]) == 1.0
    assert break_even([10.0, 20.0], [15.0, 30.0], start_year=0) == 0.0


def test_break_even_never():
    assert break_even([100.0, 200.0], [10.0, 20.0]) is None


def test_break_even_rejects_misaligned_series():
    with pytest.raises(ValueError):
        break_even([1.0, 2.0], [1.0])


@given(
    flows=st.lists(
        st.floats(min_value=-1e9, max_value=1e9), min_size=1, max_size=30
    )
)
def test_npv_at_zero_rate_equals_sum(flows):
    # 1e-12 relative to the magnitude of the data, so cancelling flows
    # cannot manufacture a failure
    scale = sum(abs(f) for f in flows) + 1.0
    assert npv(flows, 0.0) == pytest.approx(
        math.fsum(flows), abs=1e-12 * scale
    )


@given(
    invest=st.floats(min_value=1.0, max_value=1e8),
    inflows=st.lists(
        st.floats(min_value=0.0, max_value=1e8), min_size=1, max_size=25
    ),
)
def test_irr_root_property(invest, inflows):
    flows = [-invest] + inflows
    result = irr(flows)
    if result.defined:
        # roots hugging -1 have unbounded NPV slope, so the residual bound
        # is only meaningful away from the pole
        assume(result.value > -0.9)
        assert abs(npv(flows, result.value)) <= invest * 1e-9


def test_roi_counts_savings_only_for_land_application(calibrated):
    sale = build_ledger(
        calibrated,
        ScenarioSpec(10000.0, ScenarioKind.DIRECT_SALE, "a"),
    )
    field = build_ledger(
        calibrated,
        ScenarioSpec(10000.0, ScenarioKind.LAND_APPLICATION, "b"),
    )
    with_savings = roi_metrics(field, include_savings=True)
    without = roi_metrics(field, include_savings=False)
    assert with_savings.total_pct > without.total_pct
    # direct sale has no savings stream at all, so the flag cannot matter
    assert roi_metrics(sale, include_savings=True) == roi_metrics(
        sale, include_savings=False
    )


def test_roi_total_is_sum_of_years(calibrated):
    ledger = build_ledger(
        calibrated, ScenarioSpec(10000.0, ScenarioKind.LAND_APPLICATION, "b")
    )
    roi = roi_metrics(ledger)
    assert len(roi.per_year_pct) == calibrated.horizon_years
    assert roi.total_pct == pytest.approx(sum(roi.per_year_pct), rel=1e-12)
    assert roi.average_pct == pytest.approx(
        roi.total_pct / calibrated.horizon_years, rel=1e-12
    )


def test_compute_metrics_small_direct_sale(calibrated):
    # frozen headline metrics for the small direct-sale farm
    ledger = build_ledger(
        calibrated, ScenarioSpec(10000.0, ScenarioKind.DIRECT_SALE, "small-A")
    )
    report = compute_metrics(ledger, calibrated)
    assert report.discount_rate == calibrated.interest_rate
    assert report.break_even_years == pytest.approx(12.771885, rel=1e-6)
    assert report.irr.value == pytest.approx(0.07981397, rel=1e-6)
    assert report.npv == pytest.approx(-6074474.26, rel=1e-6)
    assert report.benefit_cost_delta == pytest.approx(100250783.27, rel=1e-6)
    assert report.roi.total_pct == pytest.approx(275.077008, rel=1e-6)
    assert report.roi.average_pct == pytest.approx(13.753850, rel=1e-6)
    assert report.totals_cost == pytest.approx(143215404.67, rel=1e-6)
    assert report.totals_revenue == pytest.approx(243466187.95, rel=1e-6)
    assert report.investment == pytest.approx(57260964.29, rel=1e-6)


def test_compute_metrics_honors_discount_overrides(calibrated):
    ledger = build_ledger(
        calibrated, ScenarioSpec(10000.0, ScenarioKind.DIRECT_SALE, "small-A")
    )
    flat = compute_metrics(ledger, calibrated, discount_rate=0.0)
    assert flat.npv == pytest.approx(
        sum(ledger.cash_flows()), rel=1e-9
    )
    schedule = [0.09] * calibrated.horizon_years
    sched = compute_metrics(ledger, calibrated, discount_rate=schedule)
    base = compute_metrics(ledger, calibrated)
    assert sched.npv == pytest.approx(base.npv, rel=1e-12)
    assert sched.discount_rate == tuple(schedule)
    p = dataclasses.replace(calibrated, discount_rate=0.0)
    assert compute_metrics(ledger, p).npv == pytest.approx(flat.npv)


def test_metrics_report_json_sentinels(calibrated):
    ledger = build_ledger(
        calibrated, ScenarioSpec(10000.0, ScenarioKind.DIRECT_SALE, "small-A")
    )
    report = compute_metrics(ledger, calibrated)
    data = json.loads(report.to_json())
    assert data["scenario"] == "small-A"
    assert data["irr_status"] == "ok"
    assert data["break_even_status"] == "reached"
    assert data["npv"] == pytest.approx(report.npv)
    assert len(data["roi_per_year_pct"]) == calibrated.horizon_years

    # a hopeless configuration reports reasons, not nulls without context
    p = dataclasses.replace(calibrated, credit_price=0.0)
    hopeless = build_ledger(
        p, ScenarioSpec(10000.0, ScenarioKind.DIRECT_SALE, "x")
    )
    bad = compute_metrics(hopeless, p)
    payload = json.loads(bad.to_json())
    assert payload["irr"] is None
    assert payload["irr_status"] == "no_sign_change"
    assert payload["break_even_years"] is None
    assert payload["break_even_status"] == "never"
