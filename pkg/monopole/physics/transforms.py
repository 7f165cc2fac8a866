"""
Chart Transforms

Canonical map to generalized Taub-NUT coordinates with the transformed
Hamiltonian, and the reduction to the planar Post-Winternitz system at
frozen azimuthal momentum.
"""

import logging
import math
from fractions import Fraction
from typing import Dict, Tuple

import numpy as np

from monopole.core.entities.params import ValidatedParams
from monopole.core.entities.phase import PhasePoint, TaubNutPoint
from monopole.core.entities.reduction import PWParams
from monopole.core.exceptions import OutOfDomainError, PeriodConventionError, WrongGaugeError
from monopole.infrastructure.numerics.finite_difference import fd_jacobian
from monopole.physics.model import check_window, hamiltonian_expr, hamiltonian_terms_expr

logger = logging.getLogger(__name__)

PERIOD_TOLERANCE = 1e-12

SYMPLECTIC_FORM = np.block([
    [np.zeros((3, 3)), np.eye(3)],
    [-np.eye(3), np.zeros((3, 3))],
])


def scale_exponent(vp: ValidatedParams) -> float:
    """m * delta."""
    return vp.m_value * vp.params.delta


def check_period_convention(vp: ValidatedParams) -> None:
    """
    Require nu = 1 / (m delta).

    Raises:
        PeriodConventionError: If the convention does not hold
    """
    expected = 1.0 / scale_exponent(vp)
    if abs(vp.params.nu - expected) > PERIOD_TOLERANCE * max(1.0, abs(expected)):
        raise PeriodConventionError(
            f"Taub-NUT chart requires nu = 1/(m*delta) = {expected}, got nu = {vp.params.nu}"
        )


def period_metadata(vp: ValidatedParams) -> Dict[str, float]:
    """Azimuthal periods on both charts."""
    md = scale_exponent(vp)
    return {
        'phi_period': vp.phi_period,
        'Phi_period': vp.phi_period / abs(md),
    }


def _to_taubnut_array(md: float, x: np.ndarray) -> np.ndarray:
    r, theta, phi, p_r, p_theta, p_phi = x
    R = r ** (1.0 / md)
    return np.array([
        R,
        theta,
        phi / md,
        md * p_r * R ** (md - 1.0),
        p_theta,
        md * p_phi,
    ])


def _from_taubnut_array(md: float, X: np.ndarray) -> np.ndarray:
    R, Theta, Phi, P_R, P_Theta, P_Phi = X
    return np.array([
        R ** md,
        Theta,
        md * Phi,
        R ** (1.0 - md) * P_R / md,
        P_Theta,
        P_Phi / md,
    ])


def to_taubnut(vp: ValidatedParams, z: PhasePoint, strict: bool = False) -> TaubNutPoint:
    """
    Map (r, theta, phi, p) to (R, Theta, Phi, P) with r = R^(m delta).

    Args:
        vp: Validated parameters
        z: Point on the monopole chart
        strict: Enforce nu = 1/(m delta)

    Raises:
        OutOfDomainError: r <= 0
        PeriodConventionError: strict and the convention fails
    """
    if strict:
        check_period_convention(vp)
    if not z.r > 0:
        raise OutOfDomainError(f"r must be positive, got {z.r}")
    return TaubNutPoint.from_array(_to_taubnut_array(scale_exponent(vp), z.as_array()))


def from_taubnut(vp: ValidatedParams, Z: TaubNutPoint, strict: bool = False) -> PhasePoint:
    if strict:
        check_period_convention(vp)
    if not Z.R > 0:
        raise OutOfDomainError(f"R must be positive, got {Z.R}")
    return PhasePoint.from_array(_from_taubnut_array(scale_exponent(vp), Z.as_array()))


def symplectic_residual(vp: ValidatedParams, z: PhasePoint, step: float = 1e-6) -> float:
    """max |J^T Omega J - Omega| with J the finite-difference Jacobian of the map."""
    md = scale_exponent(vp)
    J = fd_jacobian(lambda x: _to_taubnut_array(md, x), z.as_array(), step)
    return float(np.max(np.abs(J.T @ SYMPLECTIC_FORM @ J - SYMPLECTIC_FORM)))


def taubnut_terms(vp: ValidatedParams, Z: TaubNutPoint) -> Tuple[float, float, float]:
    """(kinetic, radial potential, angular potential) of the Taub-NUT Hamiltonian."""
    p = vp.params
    md = scale_exponent(vp)
    R, Theta = Z.R, Z.Theta
    Rmd = R ** md
    prefactor = R ** (2.0 - md) / (2.0 * vp.m_squared * (p.alpha1 + p.beta1 * Rmd))
    sin_t = math.sin(Theta)

    a_Phi = md * (p.ell - p.k * math.cos(Theta))
    cov_Phi = Z.P_Phi + a_Phi
    kinetic = prefactor * (
        Z.P_R ** 2 + Z.P_Theta ** 2 / R ** 2 + cov_Phi ** 2 / (R ** 2 * sin_t ** 2)
    )
    radial = prefactor * (p.alpha2 * Rmd ** 2 + p.beta2 * Rmd + p.k ** 2) / R ** 2
    numerator = 4.0 * (p.a * math.cos(Theta / 2) ** 2 + p.b * math.sin(Theta / 2) ** 2) + p.c
    angular = prefactor * numerator / (R ** 2 * sin_t ** 2)
    return kinetic, radial, angular


def taubnut_hamiltonian(vp: ValidatedParams, Z: TaubNutPoint, strict: bool = False) -> float:
    """
    Transformed Hamiltonian with gauge A_Phi = m delta A_phi.

    Raises:
        PeriodConventionError: strict and nu != 1/(m delta)
    """
    if strict:
        check_period_convention(vp)
    if not Z.R > 0:
        raise OutOfDomainError(f"R must be positive, got {Z.R}")
    return float(sum(taubnut_terms(vp, Z)))


def kinetic_mismatch(vp: ValidatedParams, z: PhasePoint) -> float:
    """|kinetic(H) - kinetic(Taub-NUT)| / max(1, |kinetic(H)|) at z."""
    kinetic_h = float(hamiltonian_terms_expr(vp, *z.as_array())[0])
    kinetic_t = taubnut_terms(vp, to_taubnut(vp, z))[0]
    return abs(kinetic_h - kinetic_t) / max(1.0, abs(kinetic_h))


def potential_discrepancy(vp: ValidatedParams, z: PhasePoint) -> Dict[str, float]:
    """
    Ratios of the Taub-NUT potential terms to those of H at the same point.

    Direct substitution gives 1/m^2 for the radial part and 1/(2 m^2) for
    the angular part; the measured ratios are reported next to them.
    """
    _, radial_h, angular_h = (float(t) for t in hamiltonian_terms_expr(vp, *z.as_array()))
    _, radial_t, angular_t = taubnut_terms(vp, to_taubnut(vp, z))
    report = {
        'radial_ratio': radial_t / radial_h if radial_h != 0 else float('nan'),
        'angular_ratio': angular_t / angular_h if angular_h != 0 else float('nan'),
        'expected_radial_ratio': 1.0 / vp.m_squared,
        'expected_angular_ratio': 1.0 / (2.0 * vp.m_squared),
    }
    logger.info(f"Taub-NUT potential discrepancy at m={vp.params.m}: {report}")
    return report


# planar reduction

def require_monopole_gauge(vp: ValidatedParams) -> None:
    if vp.params.ell != vp.params.k:
        raise WrongGaugeError(
            f"Planar reduction needs the gauge ell = k, got ell = {vp.params.ell}, k = {vp.params.k}"
        )


def reduce_2d(vp: ValidatedParams, p0: float) -> PWParams:
    """
    Planar parameters at p_phi = p0.

    mu = 1/(2m), 8 alpha = 8a + 2c + p0^2, 8 beta = 8b + 2c + (p0 + 2k)^2,
    W0(r) = W1(r) - k^2 / (2 r (alpha1 + beta1 r)).

    Raises:
        WrongGaugeError: ell != k
    """
    require_monopole_gauge(vp)
    p = vp.params
    a, b, c, k, q = (Fraction(v) for v in (p.a, p.b, p.c, p.k, p0))
    return PWParams(
        mu=1 / (2 * p.m.fraction),
        alpha_pw=(8 * a + 2 * c + q * q) / 8,
        beta_pw=(8 * b + 2 * c + (q + 2 * k) ** 2) / 8,
        alpha2=p.alpha2,
        beta2=p.beta2,
        alpha1=p.alpha1,
        beta1=p.beta1,
        p0=p0,
    )


def reduced_hamiltonian(
    pw: PWParams,
    r: float,
    theta_scaled: float,
    p_r: float,
    p_theta_scaled: float,
) -> float:
    """Planar Hamiltonian in the scaled angle theta~ = m theta, p_theta~ = p_theta / m."""
    d = pw.alpha1 + pw.beta1 * r
    angle = float(pw.mu) * theta_scaled
    kinetic = r / (2.0 * d) * (p_r ** 2 + p_theta_scaled ** 2 / r ** 2)
    angular = (float(pw.alpha_pw) / math.sin(angle) ** 2 + float(pw.beta_pw) / math.cos(angle) ** 2) / (r * d)
    return kinetic + angular + pw.w0(r)


def reduced_hamiltonian_check(vp: ValidatedParams, z: PhasePoint) -> float:
    """|H - H~| / max(1, |H|) with p0 = p_phi."""
    require_monopole_gauge(vp)
    check_window(vp, z)
    pw = reduce_2d(vp, z.p_phi)
    h = float(hamiltonian_expr(vp, *z.as_array()))
    h_reduced = reduced_hamiltonian(
        pw,
        z.r,
        vp.m_value * z.theta,
        z.p_r,
        z.p_theta / vp.m_value,
    )
    return abs(h - h_reduced) / max(1.0, abs(h))
