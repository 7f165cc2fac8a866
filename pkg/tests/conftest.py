import math

import pytest

from monopole.core.entities.params import DomainWindow, ModelParams, RationalM
from monopole.core.entities.phase import PhasePoint
from monopole.infrastructure.numerics.sampling import sample_phase_points
from monopole.physics.model import validate_params

GENERIC_CONSTANTS = dict(
    alpha1=0.4,
    beta1=0.8,
    alpha2=0.3,
    beta2=-0.7,
    k=1.0,
    ell=0.0,
    a=0.12,
    b=0.07,
    c=0.05,
)

MIC_KEPLER_CONSTANTS = dict(
    alpha1=0.0,
    beta1=1.0,
    alpha2=0.0,
    beta2=-4.0,
    k=1.0,
    ell=0.0,
)

# bound orbit with r in [0.61, 1.0] for the MIC-Kepler constants above
MIC_KEPLER_STATE = (1.0, math.pi / 2, 0.0, 0.0, 0.6, 0.4)


def make_params(m="1", window=None, **overrides):
    """Validated generic parameters with m given exactly."""
    constants = dict(GENERIC_CONSTANTS)
    constants.update(overrides)
    params = ModelParams(m=RationalM.parse(m), **constants)
    return validate_params(params, window or DomainWindow())


@pytest.fixture
def window() -> DomainWindow:
    return DomainWindow(r_min=0.5, r_max=3.0, theta_margin=0.3)


@pytest.fixture
def generic_params(window):
    """Generic constants with m = 2/3 in the gauge ell = 0."""
    return make_params("2/3", window)


@pytest.fixture
def mic_kepler_params(window):
    params = ModelParams(m=RationalM(1), nu=1.0, **MIC_KEPLER_CONSTANTS)
    return validate_params(params, window)


@pytest.fixture
def perturbed_kepler_params(window):
    params = ModelParams(m=RationalM(1), nu=1.0, a=0.17, b=0.09, c=0.05, **MIC_KEPLER_CONSTANTS)
    return validate_params(params, window)


@pytest.fixture
def kepler_state() -> PhasePoint:
    return PhasePoint(*MIC_KEPLER_STATE)


@pytest.fixture
def generic_point() -> PhasePoint:
    return PhasePoint(1.3, 1.1, 0.4, 0.35, -0.6, 0.45)


@pytest.fixture
def sample_points(window):
    """Twenty deterministic random phase points inside the window."""
    return sample_phase_points(window, seed=1234, count=20)


@pytest.fixture
def params_factory(window):
    """make_params bound to the default window."""
    def factory(m="1", **overrides):
        return make_params(m, window, **overrides)
    return factory
