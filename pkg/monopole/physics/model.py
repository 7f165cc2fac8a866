"""
Core Model

Metric, monopole gauge potential, potential family and Hamiltonian of the
curved monopole system, with exact derivatives and the curvature check.

Functions ending in `_expr` are written over plain floats and Dual numbers
alike and perform no domain checks; the public evaluators validate their
inputs against the window first.
"""

import logging
import math
from typing import Tuple

import numpy as np

from monopole.core.entities.integrals import HamiltonianParts
from monopole.core.entities.params import DomainWindow, ModelParams, ValidatedParams
from monopole.core.entities.phase import PhasePoint
from monopole.core.exceptions import DegenerateMetricError, OutOfDomainError
from monopole.infrastructure.autodiff import dual
from monopole.infrastructure.numerics.finite_difference import central_difference, ricci_scalar

logger = logging.getLogger(__name__)


def validate_params(params: ModelParams, window: DomainWindow = DomainWindow()) -> ValidatedParams:
    """
    Validate constants against the structural invariants and the window.

    Args:
        params: Model constants
        window: Radial/polar window the metric must be positive on

    Raises:
        DegenerateMetricError: alpha1 = beta1 = 0, or alpha1 + beta1 r <= 0 on the window
        ZeroMonopoleError: k = 0
        ZeroMError: m = 0

    Returns:
        Validated bundle with cached constants
    """
    params.validate()

    # alpha1 + beta1 r is linear, so the endpoints decide positivity
    for r in (window.r_min, window.r_max):
        d = params.alpha1 + params.beta1 * r
        if d <= 0:
            raise DegenerateMetricError(
                f"alpha1 + beta1*r = {d} <= 0 at r = {r} inside window "
                f"[{window.r_min}, {window.r_max}]"
            )

    m_value = params.m.value
    validated = ValidatedParams(
        params=params,
        window=window,
        m_value=m_value,
        m_squared=m_value * m_value,
        k2m2=params.k * params.k * m_value * m_value,
        phi_period=2.0 * math.pi / params.nu,
    )
    logger.debug(f"Validated parameters m={params.m}, k={params.k}, window={window.to_dict()}")
    return validated


# generic expressions

def conformal_factor_expr(vp: ValidatedParams, r):
    p = vp.params
    return p.alpha1 + p.beta1 * r


def vector_potential_expr(vp: ValidatedParams, theta):
    p = vp.params
    return p.ell - p.k * dual.cos(theta)


def w1_expr(vp: ValidatedParams, r):
    p = vp.params
    return (p.alpha2 * r * r + p.beta2 * r + p.k * p.k) / (2.0 * r * conformal_factor_expr(vp, r))


def w2_expr(vp: ValidatedParams, theta):
    p = vp.params
    half = theta * 0.5
    cos_half = dual.cos(half)
    sin_half = dual.sin(half)
    sin_t = dual.sin(theta)
    numerator = 4.0 * (p.a * cos_half * cos_half + p.b * sin_half * sin_half) + p.c
    return numerator / (sin_t * sin_t)


def hamiltonian_terms_expr(vp: ValidatedParams, r, theta, phi, p_r, p_theta, p_phi):
    """(kinetic, W1, W2 / (r D)) at a point."""
    d = conformal_factor_expr(vp, r)
    sin_t = dual.sin(theta)
    cov_phi = p_phi + vector_potential_expr(vp, theta)
    bracket = (
        p_r * p_r
        + p_theta * p_theta / (vp.m_squared * r * r)
        + cov_phi * cov_phi / (r * r * sin_t * sin_t)
    )
    kinetic = r / (2.0 * d) * bracket
    return kinetic, w1_expr(vp, r), w2_expr(vp, theta) / (r * d)


def hamiltonian_expr(vp: ValidatedParams, r, theta, phi, p_r, p_theta, p_phi):
    kinetic, radial, angular = hamiltonian_terms_expr(vp, r, theta, phi, p_r, p_theta, p_phi)
    return kinetic + radial + angular


def metric_components(vp: ValidatedParams, x: np.ndarray) -> np.ndarray:
    """diag((alpha1 + beta1 r)/r * (1, m^2 r^2, r^2 sin^2 theta)) at x = (r, theta, phi)."""
    r, theta = x[0], x[1]
    factor = (vp.params.alpha1 + vp.params.beta1 * r) / r
    return np.diag([factor, factor * vp.m_squared * r * r, factor * r * r * math.sin(theta) ** 2])


# domain checks

def check_chart(vp: ValidatedParams, r: float, theta: float) -> None:
    """Chart domain: r > 0, 0 < theta < pi, alpha1 + beta1 r > 0."""
    if not r > 0:
        raise OutOfDomainError(f"r must be positive, got {r}")
    if not 0 < theta < math.pi:
        raise OutOfDomainError(f"theta must lie in (0, pi), got {theta}")
    if not vp.conformal_factor(r) > 0:
        raise OutOfDomainError(f"alpha1 + beta1*r <= 0 at r = {r}")


def check_window(vp: ValidatedParams, z: PhasePoint) -> None:
    vp.window.check_r(z.r)
    vp.window.check_theta(z.theta)


# public evaluators

def eval_w1(vp: ValidatedParams, r: float) -> float:
    vp.window.check_r(r)
    return float(w1_expr(vp, r))


def eval_w2(vp: ValidatedParams, theta: float) -> float:
    vp.window.check_theta(theta)
    return float(w2_expr(vp, theta))


def vector_potential(vp: ValidatedParams, theta: float) -> float:
    """A_phi = ell - k cos(theta); A_r = A_theta = 0."""
    return float(vector_potential_expr(vp, theta))


def magnetic_field_check(vp: ValidatedParams, theta: float, step: float = 1e-5) -> float:
    """|dA_phi/dtheta - k sin(theta)| by central differences."""
    derivative = central_difference(lambda t: vector_potential(vp, t), theta, step)
    return abs(derivative - vp.params.k * math.sin(theta))


def hamiltonian(vp: ValidatedParams, z: PhasePoint) -> float:
    check_window(vp, z)
    return float(hamiltonian_expr(vp, *z.as_array()))


def hamiltonian_parts(vp: ValidatedParams, z: PhasePoint) -> HamiltonianParts:
    check_window(vp, z)
    kinetic, radial, angular = hamiltonian_terms_expr(vp, *z.as_array())
    return HamiltonianParts(float(kinetic), float(radial), float(angular))


def hamiltonian_gradient(vp: ValidatedParams, z: PhasePoint) -> np.ndarray:
    """Exact (dH/dr, dH/dtheta, dH/dphi, dH/dp_r, dH/dp_theta, dH/dp_phi)."""
    check_window(vp, z)
    return dual.gradient(lambda *x: hamiltonian_expr(vp, *x), z.as_array())


def hamiltonian_hessian(vp: ValidatedParams, state: np.ndarray) -> Tuple[float, np.ndarray, np.ndarray]:
    """Value, gradient and Hessian on the chart (no window check)."""
    check_chart(vp, state[0], state[1])
    return dual.hessian(lambda *x: hamiltonian_expr(vp, *x), state)


def scalar_curvature_closed(vp: ValidatedParams, r: float) -> float:
    vp.window.check_r(r)
    p = vp.params
    d = p.alpha1 + p.beta1 * r
    m2 = vp.m_squared
    return 2.0 * (1.0 - m2) / (m2 * d * r) + 3.0 * p.alpha1 ** 2 / (2.0 * d ** 3 * r)


def scalar_curvature_numeric(
    vp: ValidatedParams,
    r: float,
    step: float = 1e-4,
    theta: float = math.pi / 2,
) -> float:
    """Ricci scalar of the metric from finite-difference Christoffel symbols."""
    vp.window.check_r(r)
    return ricci_scalar(lambda x: metric_components(vp, x), np.array([r, theta, 0.0]), step)
