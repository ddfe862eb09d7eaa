"""Annual mass balance from standing cane to biochar and carbon credits.

The chain is multiplicative: cane harvest, wet bagasse, the share of that
bagasse actually free for pyrolysis, its dry matter, and finally biochar.
Land-application scenarios then split the biochar between on-farm spreading
(limited by both farm area and production) and a sellable surplus.
"""

from __future__ import annotations

from dataclasses import dataclass

from .params import ParameterSet, ScenarioKind, ScenarioSpec


@dataclass(frozen=True)
class MassBalance:
    """Steady-state yearly tonnages for one scenario."""

    cane_t: float
    bagasse_wet_t: float
    bagasse_available_t: float
    bagasse_dry_t: float
    biochar_t: float
    treated_ha: float
    applied_t: float
    surplus_t: float
    credits_tco2e: float


def credit_volume(biochar_t: float, p: ParameterSet) -> float:
    """Certified removal volume for a biochar tonnage.

    Every tonne produced is certified regardless of whether it is sold or
    land-applied on site; the registry certifies the carbon in the char,
    not its destination.
    """
    return biochar_t * p.credit_factor


def mass_balance(p: ParameterSet, scenario: ScenarioSpec) -> MassBalance:
    """Compute the yearly mass balance for a scenario under parameters p."""
    cane_t = scenario.farm_size_ha * p.sugarcane_yield
    bagasse_wet_t = cane_t * p.bagasse_fraction
    bagasse_available_t = bagasse_wet_t * p.bagasse_availability
    bagasse_dry_t = bagasse_available_t * p.dry_fraction
    biochar_t = bagasse_dry_t * p.biochar_fraction

    if scenario.kind is ScenarioKind.LAND_APPLICATION:
        # treatable area is production-limited: never spread thinner than
        # the application rate, never treat more land than the farm has
        if p.land_app_rate > 0:
            coverage_ha = biochar_t / p.land_app_rate
            if coverage_ha < scenario.farm_size_ha:
                # char-limited: everything produced goes onto the fields
                treated_ha = coverage_ha
                applied_t = biochar_t
            else:
                treated_ha = scenario.farm_size_ha
                applied_t = treated_ha * p.land_app_rate
        else:
            treated_ha = scenario.farm_size_ha
            applied_t = 0.0
        surplus_t = max(0.0, biochar_t - applied_t)
    else:
        treated_ha = 0.0
        applied_t = 0.0
        surplus_t = biochar_t

    return MassBalance(
        cane_t=cane_t,
        bagasse_wet_t=bagasse_wet_t,
        bagasse_available_t=bagasse_available_t,
        bagasse_dry_t=bagasse_dry_t,
        biochar_t=biochar_t,
        treated_ha=treated_ha,
        applied_t=applied_t,
        surplus_t=surplus_t,
        credits_tco2e=credit_volume(biochar_t, p),
    )
