"""Model parameters, scenario definitions, configuration I/O, and calibration.

All monetary amounts are nominal US dollars, masses are metric tonnes, areas
are hectares, and rates are dimensionless fractions per year.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, fields, replace
from enum import Enum


class ConfigError(ValueError):
    """Raised when a configuration value or key is invalid. The message
    always names the offending key and the violated bound."""


class CalibrationError(RuntimeError):
    """Raised when calibration cannot bracket a root for an anchor."""


class ScenarioKind(Enum):
    # Direct sale: every tonne of biochar leaves the farm and only the
    # carbon credits are monetised on site. Land application: biochar is
    # spread on the farm's own fields up to the application rate, yield
    # uplift and input savings accrue, and credits are still claimed for
    # the full tonnage produced.
    DIRECT_SALE = "direct_sale"
    LAND_APPLICATION = "land_application"


@dataclass(frozen=True)
class ScenarioSpec:
    """One simulated deployment: a farm size and a biochar use strategy."""

    farm_size_ha: float
    kind: ScenarioKind
    label: str

    def __post_init__(self) -> None:
        if not (self.farm_size_ha > 0):
            raise ConfigError(
                f"farm_size_ha must be > 0, got {self.farm_size_ha}"
            )
        if not self.label:
            raise ConfigError("scenario label must be non-empty")


@dataclass(frozen=True)
class ParameterSet:
    """Every tunable input of the simulation with its default value.

    Defaults describe a Brazilian sugarcane operation feeding an on-site
    slow-pyrolysis plant. The three ratio fields default to 1.0 and are
    meant to be solved by :func:`calibrate` against cost anchors; every
    other default is usable as-is.
    """

    # agronomy and conversion chain
    sugarcane_yield: float = 73.7        # t cane per ha per year
    bagasse_fraction: float = 0.28       # t wet bagasse per t cane
    bagasse_availability: float = 0.70   # share of bagasse not already committed
    dry_fraction: float = 0.60           # dry matter share after drying to 10 %wt
    biochar_fraction: float = 0.503      # t biochar per t dry bagasse (slow pyrolysis)
    land_app_rate: float = 4.2           # t biochar per ha per year when land-applying
    yield_uplift: float = 0.15           # fractional cane yield gain on treated land

    # finance
    interest_rate: float = 0.09          # nominal discount basis per year
    inflation_rate: float = 0.03         # cost escalation per year
    horizon_years: int = 20

    # prices and fees
    sugarcane_price: float = 30.6        # $ per t cane
    credit_price: float = 179.0          # $ per t CO2e removed
    credit_issuance_fee: float = 0.30    # $ per credit issued
    credit_review_fee: float = 1900.0    # $ per year registry review (also once at validation)
    biochar_price: float = 0.0           # $ per t biochar sold (credits carry the value)
    fertilizer_cost: float = 34.0        # $ per ha per year avoided on treated land
    crop_mgmt_cost: float = 437.0        # $ per ha per year avoided on treated land
    land_app_cost: float = 320.0         # $ per ha treated per year

    # capital and operating cost structure of the reference plant
    ref_capacity: float = 84000.0        # t feedstock per year of the reference plant
    ref_installed_cost: float = 38.42e6  # $ installed equipment at reference scale
    ref_indirect_cost: float = 13.63e6   # $ indirect plus working capital at reference scale
    ref_labor_cost: float = 1.17e6       # $ per year labor at reference scale
    ref_operation_cost: float = 2.08e6   # $ per year operation at reference scale
    scale_exponent: float = 0.7          # capacity scaling exponent for industrial plant
    planning_pct: float = 0.05           # planning and design share of direct+indirect capital
    permit_pct: float = 0.02             # permitting share of direct+indirect capital
    maintenance_pct: float = 0.02        # yearly maintenance share of installed equipment

    # calibratable ratios (location and market adjustments)
    location_cost_ratio: float = 1.0     # plant cost level here vs reference location
    wage_ratio: float = 1.0              # labor cost level here vs reference location
    credit_factor: float = 1.0           # t CO2e certified per t biochar

    # savings accounting
    fertilizer_savings_fraction: float = 1.0
    crop_mgmt_savings_fraction: float = 1.0

    # price paths. Costs always escalate with inflation_rate. Carbon credit
    # revenue follows credit_price_growth (None means: track interest_rate,
    # the default market appreciation assumption). Yield uplift revenue,
    # biochar sales, and input savings follow benefit_price_growth, which
    # defaults to 0 (constant base-year valuation).
    credit_price_growth: float | None = None
    benefit_price_growth: float = 0.0

    # discounting. None means interest_rate; a schedule overrides the
    # scalar with one rate per year, compounded multiplicatively.
    discount_rate: float | None = None
    discount_schedule: tuple[float, ...] | None = None

    # informational only: the BRL inputs behind several defaults were
    # converted at this rate. It enters no equation.
    brl_to_usd: float = 0.18

    def __post_init__(self) -> None:
        if self.discount_schedule is not None and not isinstance(
            self.discount_schedule, tuple
        ):
            object.__setattr__(
                self, "discount_schedule", tuple(self.discount_schedule)
            )
        validate_parameters(self)

    def resolved_credit_price_growth(self) -> float:
        return (
            self.interest_rate
            if self.credit_price_growth is None
            else self.credit_price_growth
        )

    def resolved_discount_rate(self) -> float | tuple[float, ...]:
        if self.discount_schedule is not None:
            return self.discount_schedule
        if self.discount_rate is not None:
            return self.discount_rate
        return self.interest_rate


# Canonical field order for serialization and the config contract.
PARAMETER_FIELDS: tuple[str, ...] = tuple(f.name for f in fields(ParameterSet))

_FRACTION_FIELDS = (
    "bagasse_fraction",
    "bagasse_availability",
    "dry_fraction",
    "biochar_fraction",
    "yield_uplift",
    "interest_rate",
    "inflation_rate",
    "planning_pct",
    "permit_pct",
    "maintenance_pct",
    "fertilizer_savings_fraction",
    "crop_mgmt_savings_fraction",
    "benefit_price_growth",
)

_OPTIONAL_FRACTION_FIELDS = ("credit_price_growth", "discount_rate")

_NON_NEGATIVE_FIELDS = (
    "sugarcane_yield",
    "land_app_rate",
    "sugarcane_price",
    "credit_price",
    "credit_issuance_fee",
    "credit_review_fee",
    "biochar_price",
    "fertilizer_cost",
    "crop_mgmt_cost",
    "land_app_cost",
    "ref_capacity",
    "ref_installed_cost",
    "ref_indirect_cost",
    "ref_labor_cost",
    "ref_operation_cost",
    "scale_exponent",
    "location_cost_ratio",
    "wage_ratio",
    "credit_factor",
    "brl_to_usd",
)


def validate_parameters(p: ParameterSet) -> None:
    """Check every invariant, raising ConfigError naming key and bound."""
    for name in _FRACTION_FIELDS:
        value = getattr(p, name)
        if not (0.0 <= value <= 1.0):
            raise ConfigError(f"{name} must lie in [0, 1], got {value}")
    for name in _OPTIONAL_FRACTION_FIELDS:
        value = getattr(p, name)
        if value is not None and not (0.0 <= value <= 1.0):
            raise ConfigError(f"{name} must lie in [0, 1], got {value}")
    for name in _NON_NEGATIVE_FIELDS:
        value = getattr(p, name)
        if not (value >= 0.0):
            raise ConfigError(f"{name} must be >= 0, got {value}")
    if not (isinstance(p.horizon_years, int) and p.horizon_years >= 1):
        raise ConfigError(
            f"horizon_years must be an integer >= 1, got {p.horizon_years}"
        )
    if not (p.ref_capacity > 0):
        raise ConfigError(f"ref_capacity must be > 0, got {p.ref_capacity}")
    # a conversion chain that claims more than one tonne of char per wet
    # tonne of feedstock is unphysical
    if not (p.dry_fraction * p.biochar_fraction < 1.0):
        raise ConfigError(
            "dry_fraction * biochar_fraction must be < 1, got "
            f"{p.dry_fraction * p.biochar_fraction}"
        )
    if p.discount_schedule is not None:
        if len(p.discount_schedule) < p.horizon_years:
            raise ConfigError(
                "discount_schedule must cover every year of the horizon: "
                f"got {len(p.discount_schedule)} rates for "
                f"{p.horizon_years} years"
            )
        for i, rate in enumerate(p.discount_schedule):
            if not (0.0 <= rate <= 1.0):
                raise ConfigError(
                    f"discount_schedule[{i}] must lie in [0, 1], got {rate}"
                )


def load_parameters(text: str) -> ParameterSet:
    """Parse a JSON configuration document into a ParameterSet.

    The document is a single JSON object whose keys are ParameterSet field
    names. Unknown keys are rejected by name; values are validated against
    the same bounds as the constructor. Missing keys keep their defaults.
    """
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"configuration is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError("configuration must be a JSON object of parameters")
    overrides: dict[str, object] = {}
    for key, value in raw.items():
        if key not in PARAMETER_FIELDS:
            raise ConfigError(f"unknown configuration key: {key!r}")
        if key == "horizon_years":
            if isinstance(value, bool) or not isinstance(value, int):
                raise ConfigError(
                    f"horizon_years must be an integer >= 1, got {value!r}"
                )
        elif key == "discount_schedule":
            if value is not None:
                if not isinstance(value, list) or not all(
                    isinstance(v, (int, float)) and not isinstance(v, bool)
                    for v in value
                ):
                    raise ConfigError(
                        "discount_schedule must be a list of numbers or null"
                    )
                value = tuple(float(v) for v in value)
        elif value is None:
            if key not in ("credit_price_growth", "discount_rate"):
                raise ConfigError(f"{key} must be a number, got null")
        elif isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigError(f"{key} must be a number, got {value!r}")
        else:
            value = float(value)
        overrides[key] = value
    return ParameterSet(**overrides)


def read_parameters(path: str) -> ParameterSet:
    with open(path, "r", encoding="utf-8") as fh:
        return load_parameters(fh.read())


def serialize_parameters(p: ParameterSet) -> str:
    """Render a ParameterSet as the canonical JSON configuration text.

    load_parameters(serialize_parameters(p)) reproduces p exactly.
    """
    payload: dict[str, object] = {}
    for name in PARAMETER_FIELDS:
        value = getattr(p, name)
        if isinstance(value, tuple):
            value = list(value)
        payload[name] = value
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def write_parameters(p: ParameterSet, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(serialize_parameters(p))


@dataclass(frozen=True)
class AdjustedCosts:
    """Reference plant costs rescaled to a capacity and localised."""

    installed: float
    indirect: float
    labor_per_year: float
    operation_per_year: float


def capacity_scale(p: ParameterSet, capacity_t: float) -> float:
    """Industrial scaling factor (capacity / reference capacity) ** exponent."""
    if not (capacity_t > 0):
        raise ConfigError(f"capacity_t must be > 0, got {capacity_t}")
    return (capacity_t / p.ref_capacity) ** p.scale_exponent


def adjusted_reference_costs(p: ParameterSet, capacity_t: float) -> AdjustedCosts:
    """Scale the reference plant to capacity_t and apply location ratios.

    Capital and operating costs shift with the overall plant cost level
    (location_cost_ratio); labor shifts with the wage level (wage_ratio).
    """
    s = capacity_scale(p, capacity_t)
    return AdjustedCosts(
        installed=p.ref_installed_cost * p.location_cost_ratio * s,
        indirect=p.ref_indirect_cost * p.location_cost_ratio * s,
        labor_per_year=p.ref_labor_cost * p.wage_ratio * s,
        operation_per_year=p.ref_operation_cost * p.location_cost_ratio * s,
    )


def escalated_total(base: float, rate: float, years: int) -> float:
    """Sum of base * (1+rate)**(t-1) over t = 1..years, in year order."""
    total = 0.0
    for t in range(years):
        total += base * (1.0 + rate) ** t
    return total


@dataclass(frozen=True)
class CalibrationAnchors:
    """Observed small-farm cost anchors that pin the three ratios.

    equipment_cost: installed equipment capital for the anchor farm.
    labor_cost_horizon: inflation-escalated labor spend over the horizon.
    revenue_cost_ratio: life-cycle revenue over life-cycle cost for the
    anchor farm run as a direct-sale scenario.
    """

    equipment_cost: float = 39.5e6
    labor_cost_horizon: float = 7.0e6
    revenue_cost_ratio: float = 1.7
    farm_size_ha: float = 10000.0


@dataclass(frozen=True)
class CalibrationResult:
    parameters: ParameterSet
    # relative residuals of re-simulated anchors, keyed by anchor name
    residuals: dict[str, float] = field(default_factory=dict)


_BRACKET_LO = 1e-6
_BRACKET_HI = 1e3
_REL_TOL = 1e-9


def calibrate(
    p: ParameterSet, anchors: CalibrationAnchors | None = None
) -> CalibrationResult:
    """Solve location_cost_ratio, wage_ratio, and credit_factor from anchors.

    The first two anchors are linear in their ratios and solve directly.
    The revenue/cost anchor is monotone in credit_factor and is solved by
    bisection on [1e-6, 1e3] to 1e-9 relative tolerance. Raises
    CalibrationError("no root in bracket") when the anchor cannot be hit.
    """
    from .ledger import build_ledger  # local import to avoid a cycle

    if anchors is None:
        anchors = CalibrationAnchors()
    scenario = ScenarioSpec(
        farm_size_ha=anchors.farm_size_ha,
        kind=ScenarioKind.DIRECT_SALE,
        label="calibration-anchor",
    )

    from .production import mass_balance

    capacity = mass_balance(p, scenario).bagasse_available_t
    s = capacity_scale(p, capacity)

    if anchors.equipment_cost <= 0:
        raise CalibrationError(
            "no root in bracket: equipment_cost anchor must be positive"
        )
    location_cost_ratio = anchors.equipment_cost / (p.ref_installed_cost * s)

    if anchors.labor_cost_horizon <= 0:
        raise CalibrationError(
            "no root in bracket: labor_cost_horizon anchor must be positive"
        )
    horizon_factor = escalated_total(1.0, p.inflation_rate, p.horizon_years)
    wage_ratio = anchors.labor_cost_horizon / (
        p.ref_labor_cost * s * horizon_factor
    )

    partial = replace(
        p, location_cost_ratio=location_cost_ratio, wage_ratio=wage_ratio
    )

    def ratio_error(credit_factor: float) -> float:
        candidate = replace(partial, credit_factor=credit_factor)
        ledger = build_ledger(candidate, scenario)
        return (
            ledger.totals.revenue / ledger.totals.cost
            - anchors.revenue_cost_ratio
        )

    lo, hi = _BRACKET_LO, _BRACKET_HI
    f_lo, f_hi = ratio_error(lo), ratio_error(hi)
    if not (f_lo < 0.0 < f_hi or f_hi < 0.0 < f_lo):
        raise CalibrationError("no root in bracket")
    # plain bisection: the ratio is monotone in credit_factor, so sign
    # tracking alone converges
    while (hi - lo) > _REL_TOL * max(abs(lo), abs(hi), 1.0):
        mid = 0.5 * (lo + hi)
        f_mid = ratio_error(mid)
        if f_mid == 0.0:
            lo = hi = mid
            break
        if (f_mid < 0.0) == (f_lo < 0.0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    credit_factor = 0.5 * (lo + hi)

    calibrated = replace(partial, credit_factor=credit_factor)
    return CalibrationResult(
        parameters=calibrated,
        residuals=calibration_residuals(calibrated, anchors),
    )


def calibration_residuals(
    p: ParameterSet, anchors: CalibrationAnchors
) -> dict[str, float]:
    """Re-simulate the anchor scenario and report relative anchor misses."""
    from .ledger import build_ledger
    from .production import mass_balance

    scenario = ScenarioSpec(
        farm_size_ha=anchors.farm_size_ha,
        kind=ScenarioKind.DIRECT_SALE,
        label="calibration-anchor",
    )
    capacity = mass_balance(p, scenario).bagasse_available_t
    costs = adjusted_reference_costs(p, capacity)
    labor_horizon = escalated_total(
        costs.labor_per_year, p.inflation_rate, p.horizon_years
    )
    ledger = build_ledger(p, scenario)
    ratio = ledger.totals.revenue / ledger.totals.cost
    return {
        "equipment_cost": costs.installed / anchors.equipment_cost - 1.0,
        "labor_cost_horizon": labor_horizon / anchors.labor_cost_horizon - 1.0,
        "revenue_cost_ratio": ratio / anchors.revenue_cost_ratio - 1.0,
    }


def brazil_sugarcane_scenarios() -> tuple[ScenarioSpec, ...]:
    """The six built-in case study scenarios: three farm sizes, two uses."""
    sizes = (("small", 10000.0), ("medium", 20000.0), ("large", 50000.0))
    out = []
    for name, ha in sizes:
        out.append(
            ScenarioSpec(farm_size_ha=ha, kind=ScenarioKind.DIRECT_SALE,
                         label=f"{name}-A")
        )
        out.append(
            ScenarioSpec(farm_size_ha=ha, kind=ScenarioKind.LAND_APPLICATION,
                         label=f"{name}-B")
        )
    return tuple(out)


PRESETS: dict[str, tuple[ScenarioSpec, ...]] = {
    "brazil-sugarcane": brazil_sugarcane_scenarios(),
}


def preset_scenarios(name: str) -> tuple[ScenarioSpec, ...]:
    try:
        return PRESETS[name]
    except KeyError:
        raise ConfigError(
            f"unknown preset: {name!r} (available: {', '.join(sorted(PRESETS))})"
        ) from None


def scenario_id(scenario: ScenarioSpec) -> str:
    """Filesystem-safe identifier derived from the scenario label."""
    out = []
    for ch in scenario.label.lower():
        out.append(ch if ch.isalnum() else "_")
    return "".join(out)
