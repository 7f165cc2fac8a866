"""
Integrals of Motion

The rotational integrals X1, X2, the separated objects M, N, T1, T2 and
the complex-exponential integral I, and the polynomial integral calX built
from the complex factors w_r, w_theta.

All formulas after X2 are derived in the gauge ell = 0 and use |m| =
m1/m2. The construction with a signed negative m is not an integral of the
flow, so the sign of m only enters through m^2.
"""

import cmath
import logging
import math
from typing import Tuple

from monopole.core.entities.integrals import (
    CalXValue,
    ComplexFactorization,
    ConservedSet,
    ParityBranch,
    divides_by_sqrt_s,
)
from monopole.core.entities.params import ValidatedParams
from monopole.core.entities.phase import PhasePoint
from monopole.core.exceptions import ComplexDomainError, NonpositiveSError, WrongGaugeError
from monopole.infrastructure.autodiff import dual
from monopole.physics.model import (
    check_window,
    conformal_factor_expr,
    hamiltonian_expr,
    vector_potential_expr,
    w1_expr,
    w2_expr,
)

logger = logging.getLogger(__name__)


def require_zero_gauge(vp: ValidatedParams) -> None:
    if vp.params.ell != 0:
        raise WrongGaugeError(
            f"Formula is derived in the gauge ell = 0, got ell = {vp.params.ell}"
        )


def m_abs(vp: ValidatedParams) -> float:
    return vp.params.m.magnitude


# generic expressions

def x1_expr(vp: ValidatedParams, r, theta, phi, p_r, p_theta, p_phi):
    return p_phi + vp.params.ell


def x2_expr(vp: ValidatedParams, r, theta, phi, p_r, p_theta, p_phi):
    sin_t = dual.sin(theta)
    cov_phi = p_phi + vector_potential_expr(vp, theta)
    return p_theta * p_theta + vp.m_squared * (
        cov_phi * cov_phi / (sin_t * sin_t) + 2.0 * w2_expr(vp, theta)
    )


def q1_expr(vp: ValidatedParams, E0, E1, r):
    """Imaginary part of the radial factor."""
    p = vp.params
    numerator = 2.0 * E1 + vp.m_squared * (r * (p.beta2 - 2.0 * p.alpha1 * E0) + 2.0 * p.k * p.k)
    return numerator / (m_abs(vp) * r)


def q2_expr(vp: ValidatedParams, S, p0, theta):
    """Imaginary part of the angular factor."""
    p = vp.params
    return vp.m_squared * (2.0 * p.a - 2.0 * p.b - p.k * p0) + dual.cos(theta) * S


def complex_factors_expr(vp: ValidatedParams, r, theta, phi, p_r, p_theta, p_phi, *, sqrt_sign: float = 1.0):
    """(w_r, w_theta, S, sqrt(S)) at a point; sqrt_sign = -1 takes the other root."""
    E0 = hamiltonian_expr(vp, r, theta, phi, p_r, p_theta, p_phi)
    E1 = x2_expr(vp, r, theta, phi, p_r, p_theta, p_phi)
    S = E1 + vp.k2m2
    if dual.value(S) <= 0:
        raise NonpositiveSError(f"S = E1 + k^2 m^2 = {dual.value(S)} <= 0")
    sqrt_s = sqrt_sign * dual.sqrt(S)
    w_r = -2.0 * sqrt_s * p_r + 1j * q1_expr(vp, E0, E1, r)
    w_theta = dual.sin(theta) * sqrt_s * p_theta + 1j * q2_expr(vp, S, p_phi, theta)
    return w_r, w_theta, S, sqrt_s


def calx_expr(vp: ValidatedParams, r, theta, phi, p_r, p_theta, p_phi, *, sqrt_sign: float = 1.0):
    """Parity-selected component of w_r^m2 w_theta^m1, divided by sqrt(S) when required."""
    m1, m2 = vp.m1, vp.m2
    w_r, w_theta, _, sqrt_s = complex_factors_expr(vp, r, theta, phi, p_r, p_theta, p_phi, sqrt_sign=sqrt_sign)
    product = w_r ** m2 * w_theta ** m1
    kept = dual.real(product) if m2 % 2 == 1 else dual.imag(product)
    if divides_by_sqrt_s(m1, m2):
        kept = kept / sqrt_s
    return kept


def separated_hamiltonian_expr(vp: ValidatedParams, r, theta, phi, p_r, p_theta, p_phi):
    """r p_r^2 / (2D) + X2 / (2 m^2 r D) + W1."""
    d = conformal_factor_expr(vp, r)
    x2 = x2_expr(vp, r, theta, phi, p_r, p_theta, p_phi)
    return r * p_r * p_r / (2.0 * d) + x2 / (2.0 * vp.m_squared * r * d) + w1_expr(vp, r)


# public evaluators

def eval_x1(vp: ValidatedParams, z: PhasePoint) -> float:
    """p_phi^A + k cos(theta), which reduces to p_phi + ell."""
    return float(x1_expr(vp, *z.as_array()))


def eval_x2(vp: ValidatedParams, z: PhasePoint) -> float:
    vp.window.check_theta(z.theta)
    return float(x2_expr(vp, *z.as_array()))


def separated_hamiltonian(vp: ValidatedParams, z: PhasePoint) -> float:
    check_window(vp, z)
    return float(separated_hamiltonian_expr(vp, *z.as_array()))


def conserved_set(vp: ValidatedParams, z: PhasePoint) -> ConservedSet:
    """
    Conserved values (E0, E1, p0, S) at z.

    Raises:
        WrongGaugeError: ell != 0
        OutOfDomainError: z outside the window
    """
    require_zero_gauge(vp)
    check_window(vp, z)
    x = z.as_array()
    return ConservedSet.build(
        E0=float(hamiltonian_expr(vp, *x)),
        E1=float(x2_expr(vp, *x)),
        p0=z.p_phi,
        k2m2=vp.k2m2,
    )


def complex_factorization(vp: ValidatedParams, z: PhasePoint) -> ComplexFactorization:
    require_zero_gauge(vp)
    check_window(vp, z)
    w_r, w_theta, _, _ = complex_factors_expr(vp, *z.as_array())
    w_r, w_theta = complex(w_r), complex(w_theta)
    return ComplexFactorization(
        w_r=w_r,
        w_theta=w_theta,
        P=w_r ** vp.m2 * w_theta ** vp.m1,
        parity_branch=ParityBranch.for_denominator(vp.m2),
        sqrtS_division=divides_by_sqrt_s(vp.m1, vp.m2),
    )


def eval_calX(vp: ValidatedParams, z: PhasePoint) -> CalXValue:
    """
    Evaluate the polynomial integral.

    The printed difference P - (-conj w_r)^m2 conj(w_theta)^m1 is formed
    literally; it equals 2 Re P for odd m2 and 2i Im P for even m2. The
    reported value is the selected component halved, divided by sqrt(S)
    for even m1 and odd m2. The off-branch residual is the larger of the
    complementary component of the difference and the part of calX that is
    odd in sqrt(S), relative to the modulus scale max(1, |P|) of calX
    (divided by sqrt(S) along with it). The odd part is measured by
    rebuilding calX with the other square root of S; it vanishes only when
    the parity selection leaves integer powers of S.

    Raises:
        NonpositiveSError: S <= 0
        WrongGaugeError: ell != 0
    """
    fact = complex_factorization(vp, z)
    conj_term = (-fact.w_r.conjugate()) ** vp.m2 * fact.w_theta.conjugate() ** vp.m1
    printed = fact.P - conj_term

    if fact.parity_branch == ParityBranch.REAL_PART:
        kept, discarded = printed.real, printed.imag
    else:
        kept, discarded = printed.imag, printed.real

    value = 0.5 * kept
    scale = abs(fact.P)
    if fact.sqrtS_division:
        sqrt_s = math.sqrt(_s_at(vp, z))
        value /= sqrt_s
        discarded /= sqrt_s
        scale /= sqrt_s
    flipped = float(calx_expr(vp, *z.as_array(), sqrt_sign=-1.0))
    odd_part = 0.5 * abs(value - flipped)
    residual = max(0.5 * abs(discarded), odd_part) / max(1.0, scale)
    return CalXValue(value=value, offbranch_residual=residual, factorization=fact)


def _s_at(vp: ValidatedParams, z: PhasePoint) -> float:
    return float(x2_expr(vp, *z.as_array())) + vp.k2m2


def radial_radicand(vp: ValidatedParams, cs: ConservedSet) -> float:
    """Constant under the square root of T1; equals |w_r|^2."""
    p = vp.params
    m2 = vp.m_squared
    E0, E1, k = cs.E0, cs.E1, p.k
    return (
        4.0 * p.alpha1 ** 2 * E0 ** 2 * m2
        + 8.0 * p.beta1 * E0 * E1
        + 4.0 * E0 * m2 * (2.0 * p.beta1 * k ** 2 - p.alpha1 * p.beta2)
        - 4.0 * p.alpha2 * E1
        + m2 * (p.beta2 ** 2 - 4.0 * p.alpha2 * k ** 2)
    )


def angular_radicand(vp: ValidatedParams, cs: ConservedSet) -> float:
    """Constant under the square root of T2; equals |w_theta|^2."""
    p = vp.params
    m2 = vp.m_squared
    a, b, c, k, p0, E1 = p.a, p.b, p.c, p.k, cs.p0, cs.E1
    return (
        2.0 * m2 ** 2 * (
            2.0 * a ** 2
            - 2.0 * a * (2.0 * b + k * (k + p0))
            + 2.0 * b ** 2
            - 2.0 * b * k * (k - p0)
            - c * k ** 2
        )
        - E1 * m2 * (4.0 * a + 4.0 * b + 2.0 * c - k ** 2 + p0 ** 2)
        + E1 ** 2
    )


def eval_T1(vp: ValidatedParams, cs: ConservedSet, r: float) -> float:
    radicand = radial_radicand(vp, cs)
    if radicand <= 0:
        raise ComplexDomainError(f"Radial radicand {radicand} <= 0")
    return float(q1_expr(vp, cs.E0, cs.E1, r)) / math.sqrt(radicand)


def eval_T2(vp: ValidatedParams, cs: ConservedSet, theta: float) -> float:
    radicand = angular_radicand(vp, cs)
    if radicand <= 0:
        raise ComplexDomainError(f"Angular radicand {radicand} <= 0")
    return float(q2_expr(vp, cs.S, cs.p0, theta)) / math.sqrt(radicand)


def _sqrt_s(cs: ConservedSet) -> float:
    if cs.S <= 0:
        raise ComplexDomainError(f"S = {cs.S} <= 0")
    return math.sqrt(cs.S)


def _unit_interval(t: float, name: str) -> float:
    if abs(t) > 1.0:
        raise ComplexDomainError(f"|{name}| = {abs(t)} > 1")
    return t


def eval_M(vp: ValidatedParams, cs: ConservedSet, r: float) -> float:
    """-arccos(T1) / (|m| sqrt(S))."""
    sqrt_s = _sqrt_s(cs)
    t1 = _unit_interval(eval_T1(vp, cs, r), "T1")
    return -math.acos(t1) / (m_abs(vp) * sqrt_s)


def eval_N(vp: ValidatedParams, cs: ConservedSet, theta: float) -> float:
    """arcsin(T2) / sqrt(S)."""
    sqrt_s = _sqrt_s(cs)
    t2 = _unit_interval(eval_T2(vp, cs, theta), "T2")
    return math.asin(t2) / sqrt_s


def _branch_constant(vp: ValidatedParams, cs: ConservedSet, z: PhasePoint) -> float:
    M = eval_M(vp, cs, z.r)
    N = eval_N(vp, cs, z.theta)
    if math.copysign(1.0, z.p_r) == math.copysign(1.0, z.p_theta):
        return M - N
    return M + N


def separation_constant(vp: ValidatedParams, z: PhasePoint) -> float:
    """
    Conserved combination of M and N on the current branch.

    M - N is constant while p_r and p_theta share a sign, M + N otherwise.
    """
    return _branch_constant(vp, conserved_set(vp, z), z)


def eval_I(vp: ValidatedParams, z: PhasePoint) -> complex:
    """
    2i exp(i pi m2 / 2) sin(m1 sqrt(S) (N - M)) on the branch where p_r and
    p_theta share a sign.

    With opposite signs N - M is replaced by -(M + N), the combination
    conserved there, so |I| is constant along the whole orbit.
    """
    cs = conserved_set(vp, z)
    phase = cmath.exp(0.5j * math.pi * vp.m2)
    return 2j * phase * math.sin(-vp.m1 * math.sqrt(cs.S) * _branch_constant(vp, cs, z))


def integral_normalization(vp: ValidatedParams, cs: ConservedSet) -> float:
    """
    Conserved factor with |calX| = normalization * |I| / 2.

    R1^(m2/2) R2^(m1/2), divided by sqrt(S) when calX is.
    """
    r1 = radial_radicand(vp, cs)
    r2 = angular_radicand(vp, cs)
    if r1 <= 0 or r2 <= 0:
        raise ComplexDomainError(f"Radicands must be positive, got R1 = {r1}, R2 = {r2}")
    norm = r1 ** (vp.m2 / 2.0) * r2 ** (vp.m1 / 2.0)
    if divides_by_sqrt_s(vp.m1, vp.m2):
        norm /= _sqrt_s(cs)
    return norm


def factor_moduli(vp: ValidatedParams, z: PhasePoint) -> Tuple[float, float]:
    """(|w_r|^2, |w_theta|^2) at z."""
    fact = complex_factorization(vp, z)
    return abs(fact.w_r) ** 2, abs(fact.w_theta) ** 2
