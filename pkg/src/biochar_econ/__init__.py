"""Techno-economic simulation of farm-scale biochar production.

The package models a sugarcane operation that pyrolyses its surplus bagasse
into biochar, either selling the output or applying it to its own fields,
and asks whether the plant pays for itself over a multi-decade horizon:
mass balance, a year-by-year cash-flow ledger, discounted and undiscounted
viability metrics, and 1-D sensitivity sweeps.

Importing the package pulls no third-party code; plotting lives in
:mod:`biochar_econ.figures` and is only imported by the report command.
"""

from .ledger import (
    CapitalStack,
    LEDGER_CSV_COLUMNS,
    Ledger,
    LedgerTotals,
    YearCosts,
    YearLine,
    YearRevenues,
    YearSavings,
    build_ledger,
    capital_stack,
    ledger_to_csv,
    ledger_to_json,
    ledger_to_json_dict,
    load_ledger_csv,
    year_line,
)
from .metrics import (
    IrrResult,
    MetricsReport,
    RoiMetrics,
    benefit_cost,
    break_even,
    compute_metrics,
    irr,
    npv,
    roi_metrics,
)
from .params import (
    CalibrationAnchors,
    CalibrationError,
    CalibrationResult,
    ConfigError,
    PARAMETER_FIELDS,
    PRESETS,
    ParameterSet,
    ScenarioKind,
    ScenarioSpec,
    adjusted_reference_costs,
    brazil_sugarcane_scenarios,
    calibrate,
    calibration_residuals,
    capacity_scale,
    escalated_total,
    load_parameters,
    preset_scenarios,
    read_parameters,
    scenario_id,
    serialize_parameters,
    validate_parameters,
    write_parameters,
)
from .production import MassBalance, credit_volume, mass_balance
from .sweep import (
    DEFAULT_GRIDS,
    SWEEP_CSV_COLUMNS,
    SweepResult,
    SweepRow,
    Threshold,
    build_grid,
    default_grid,
    find_threshold,
    load_sweep_csv,
    sweep_1d,
    sweep_to_csv,
    sweep_to_json,
    sweep_to_json_dict,
)

__version__ = "0.1.0"

__all__ = [
    "CalibrationAnchors",
    "CalibrationError",
    "CalibrationResult",
    "CapitalStack",
    "ConfigError",
    "DEFAULT_GRIDS",
    "IrrResult",
    "LEDGER_CSV_COLUMNS",
    "Ledger",
    "LedgerTotals",
    "MassBalance",
    "MetricsReport",
    "PARAMETER_FIELDS",
    "PRESETS",
    "ParameterSet",
    "RoiMetrics",
    "SWEEP_CSV_COLUMNS",
    "ScenarioKind",
    "ScenarioSpec",
    "SweepResult",
    "SweepRow",
    "Threshold",
    "YearCosts",
    "YearLine",
    "YearRevenues",
    "YearSavings",
    "adjusted_reference_costs",
    "benefit_cost",
    "brazil_sugarcane_scenarios",
    "break_even",
    "build_grid",
    "build_ledger",
    "calibrate",
    "calibration_residuals",
    "capacity_scale",
    "capital_stack",
    "compute_metrics",
    "credit_volume",
    "default_grid",
    "escalated_total",
    "find_threshold",
    "irr",
    "ledger_to_csv",
    "ledger_to_json",
    "ledger_to_json_dict",
    "load_ledger_csv",
    "load_parameters",
    "load_sweep_csv",
    "mass_balance",
    "npv",
    "preset_scenarios",
    "read_parameters",
    "roi_metrics",
    "scenario_id",
    "serialize_parameters",
    "sweep_1d",
    "sweep_to_csv",
    "sweep_to_json",
    "sweep_to_json_dict",
    "validate_parameters",
    "write_parameters",
    "year_line",
]
