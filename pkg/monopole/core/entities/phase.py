"""
Phase Space Entities

Canonical points on the monopole chart and on the Taub-NUT chart.
"""

import math
from dataclasses import dataclass
from typing import Any, Dict, Iterable

import numpy as np

from monopole.core.exceptions import OutOfDomainError

PHASE_FIELDS = ('r', 'theta', 'phi', 'p_r', 'p_theta', 'p_phi')
TAUBNUT_FIELDS = ('R', 'Theta', 'Phi', 'P_R', 'P_Theta', 'P_Phi')


@dataclass(frozen=True)
class PhasePoint:
    """
    Canonical point (r, theta, phi, p_r, p_theta, p_phi).

    Attributes:
        r: Radial coordinate, r > 0
        theta: Polar angle in (0, pi)
        phi: Azimuth, read modulo 2 pi / nu
        p_r: Momentum conjugate to r
        p_theta: Momentum conjugate to theta
        p_phi: Momentum conjugate to phi (gauge dependent)
    """

    r: float
    theta: float
    phi: float
    p_r: float
    p_theta: float
    p_phi: float

    def __post_init__(self):
        """Validate point after initialization."""
        self.validate()

    def validate(self) -> bool:
        """
        Validate coordinate ranges.

        Raises:
            OutOfDomainError: If r <= 0 or theta is not strictly inside (0, pi)

        Returns:
            True if valid
        """
        values = self.as_array()
        if not np.all(np.isfinite(values)):
            raise OutOfDomainError(f"Phase point has non-finite entries: {values.tolist()}")
        if not self.r > 0:
            raise OutOfDomainError(f"r must be positive, got {self.r}")
        if not 0 < self.theta < math.pi:
            raise OutOfDomainError(f"theta must lie in (0, pi), got {self.theta}")
        return True

    def as_array(self) -> np.ndarray:
        return np.array(
            [self.r, self.theta, self.phi, self.p_r, self.p_theta, self.p_phi],
            dtype=float,
        )

    @classmethod
    def from_array(cls, values: Iterable[float]) -> "PhasePoint":
        r, theta, phi, p_r, p_theta, p_phi = (float(v) for v in values)
        return cls(r, theta, phi, p_r, p_theta, p_phi)

    def to_dict(self) -> Dict[str, Any]:
        return dict(zip(PHASE_FIELDS, self.as_array().tolist()))


@dataclass(frozen=True)
class TaubNutPoint:
    """
    Canonical point on the Taub-NUT chart.

    Attributes:
        R: Radial coordinate, R > 0
        Theta: Polar angle in (0, pi)
        Phi: Azimuth
        P_R: Momentum conjugate to R
        P_Theta: Momentum conjugate to Theta
        P_Phi: Momentum conjugate to Phi
    """

    R: float
    Theta: float
    Phi: float
    P_R: float
    P_Theta: float
    P_Phi: float

    def __post_init__(self):
        if not self.R > 0:
            raise OutOfDomainError(f"R must be positive, got {self.R}")
        if not 0 < self.Theta < math.pi:
            raise OutOfDomainError(f"Theta must lie in (0, pi), got {self.Theta}")

    def as_array(self) -> np.ndarray:
        return np.array(
            [self.R, self.Theta, self.Phi, self.P_R, self.P_Theta, self.P_Phi],
            dtype=float,
        )

    @classmethod
    def from_array(cls, values: Iterable[float]) -> "TaubNutPoint":
        R, Theta, Phi, P_R, P_Theta, P_Phi = (float(v) for v in values)
        return cls(R, Theta, Phi, P_R, P_Theta, P_Phi)

    def to_dict(self) -> Dict[str, Any]:
        return dict(zip(TAUBNUT_FIELDS, self.as_array().tolist()))
