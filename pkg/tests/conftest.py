import numpy as np
import pytest

from poledspdc import (
    base_domain_length,
    calibrate,
    congruent_linbo3_extraordinary,
    default_pump,
    symmetric_grid,
)


@pytest.fixture(scope="session")
def model():
    return congruent_linbo3_extraordinary()


@pytest.fixture(scope="session")
def pump():
    return default_pump()


@pytest.fixture(scope="session")
def l0(model, pump):
    return base_domain_length(model, pump.omega_p0)


@pytest.fixture(scope="session")
def dk0(l0):
    return float(np.pi / l0)


@pytest.fixture(scope="session")
def grid_small(model, pump):
    return symmetric_grid(pump.omega_p0, n_samples=2 ** 10, model=model)


@pytest.fixture(scope="session")
def grid_mid(model, pump):
    return symmetric_grid(pump.omega_p0, n_samples=2 ** 12, model=model)


@pytest.fixture(scope="session")
def grid_large(model, pump):
    return symmetric_grid(pump.omega_p0, n_samples=2 ** 13, model=model)


@pytest.fixture(scope="session")
def calibration(model, grid_mid, pump):
    return calibrate(model, grid_mid, pump)
