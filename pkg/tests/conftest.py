import pytest

from biochar_econ import (
    ParameterSet,
    brazil_sugarcane_scenarios,
    calibrate,
)


@pytest.fixture(scope="session")
def base_params() -> ParameterSet:
    return ParameterSet()


@pytest.fixture(scope="session")
def calibrated(base_params) -> ParameterSet:
    # one shared solve; calibration is deterministic so every test sees
    # the same parameter set
    return calibrate(base_params).parameters


@pytest.fixture(scope="session")
def scenarios():
    return brazil_sugarcane_scenarios()


@pytest.fixture(scope="session")
def scenario_by_label(scenarios):
    return {sc.label: sc for sc in scenarios}
