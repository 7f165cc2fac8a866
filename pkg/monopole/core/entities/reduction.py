"""
Reduction Entity

Parameters of the planar system obtained by freezing the azimuthal momentum.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict

from monopole.core.exceptions import ParameterError


@dataclass(frozen=True)
class PWParams:
    """
    Planar Post-Winternitz parameters.

    Attributes:
        mu: Angular deformation, m = 1 / (2 mu)
        alpha_pw: (8a + 2c + p0^2) / 8
        beta_pw: (8b + 2c + (p0 + 2k)^2) / 8
        alpha2: Radial profile constant of W0
        beta2: Radial profile constant of W0
        alpha1: Metric constant in W0's denominator
        beta1: Metric constant in W0's denominator
        p0: Frozen azimuthal momentum
        W0_profile: Human-readable form of W0(r)
    """

    mu: Fraction
    alpha_pw: Fraction
    beta_pw: Fraction
    alpha2: float
    beta2: float
    alpha1: float
    beta1: float
    p0: float
    W0_profile: str = "W0(r) = (alpha2 r^2 + beta2 r) / (2 r (alpha1 + beta1 r))"

    def __post_init__(self):
        if self.mu == 0:
            raise ParameterError("mu must be nonzero")

    def w0(self, r: float) -> float:
        """W1(r) with the k^2 term removed."""
        return (self.alpha2 * r * r + self.beta2 * r) / (2.0 * r * (self.alpha1 + self.beta1 * r))

    def to_dict(self) -> Dict[str, Any]:
        return {
            'mu': str(self.mu),
            'mu_float': float(self.mu),
            'alpha_pw': str(self.alpha_pw),
            'alpha_pw_float': float(self.alpha_pw),
            'beta_pw': str(self.beta_pw),
            'beta_pw_float': float(self.beta_pw),
            'alpha1': self.alpha1,
            'beta1': self.beta1,
            'alpha2': self.alpha2,
            'beta2': self.beta2,
            'p0': self.p0,
            'W0_profile': self.W0_profile,
        }
