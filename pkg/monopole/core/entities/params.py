"""
Model Parameter Entities

Physical and geometric constants of the monopole family, the radial/polar
sampling window and the validated bundle every evaluator consumes.
"""

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Any, Dict, Union

from monopole.core.exceptions import (
    DegenerateMetricError,
    OutOfDomainError,
    ParameterError,
    ZeroMError,
    ZeroMonopoleError,
)


@dataclass(frozen=True)
class RationalM:
    """
    Exact rational metric deformation m = sign * m1 / m2.

    Attributes:
        m1: Positive numerator
        m2: Positive denominator
        sign: +1 or -1
    """

    m1: int
    m2: int = 1
    sign: int = 1

    def __post_init__(self):
        """Normalize to lowest terms."""
        if self.m1 == 0:
            raise ZeroMError("m must be nonzero, got numerator 0")
        if self.m2 == 0:
            raise ParameterError("Denominator of m cannot be zero")
        if self.sign not in (-1, 1):
            raise ParameterError(f"sign must be +1 or -1, got {self.sign}")

        sign = self.sign * (1 if self.m1 > 0 else -1) * (1 if self.m2 > 0 else -1)
        m1, m2 = abs(self.m1), abs(self.m2)
        g = math.gcd(m1, m2)
        object.__setattr__(self, "m1", m1 // g)
        object.__setattr__(self, "m2", m2 // g)
        object.__setattr__(self, "sign", sign)

    @classmethod
    def parse(cls, value: Union[str, int, Fraction, "RationalM"]) -> "RationalM":
        """Build from "2/3", "-5/2", 3 or a Fraction."""
        if isinstance(value, RationalM):
            return value
        if isinstance(value, float):
            raise ParameterError(f"m must be given exactly (e.g. '2/3'), got float {value}")
        frac = Fraction(value)
        if frac == 0:
            raise ZeroMError("m must be nonzero")
        return cls(abs(frac.numerator), frac.denominator, 1 if frac > 0 else -1)

    @property
    def fraction(self) -> Fraction:
        """Exact signed value."""
        return Fraction(self.sign * self.m1, self.m2)

    @property
    def value(self) -> float:
        """Signed value as float."""
        return self.sign * self.m1 / self.m2

    @property
    def magnitude(self) -> float:
        """|m| as float."""
        return self.m1 / self.m2

    def __str__(self) -> str:
        prefix = "-" if self.sign < 0 else ""
        return f"{prefix}{self.m1}/{self.m2}"


@dataclass(frozen=True)
class DomainWindow:
    """
    Safe sampling window away from r -> 0 and sin(theta) -> 0.

    Attributes:
        r_min: Lower radial bound
        r_max: Upper radial bound
        theta_margin: Exclusion distance from the poles
    """

    r_min: float = 0.5
    r_max: float = 3.0
    theta_margin: float = 0.3

    def __post_init__(self):
        if not 0 < self.r_min < self.r_max:
            raise ParameterError(
                f"Window needs 0 < r_min < r_max, got [{self.r_min}, {self.r_max}]"
            )
        if not 0 < self.theta_margin < math.pi / 2:
            raise ParameterError(
                f"theta_margin must lie in (0, pi/2), got {self.theta_margin}"
            )

    @property
    def theta_min(self) -> float:
        return self.theta_margin

    @property
    def theta_max(self) -> float:
        return math.pi - self.theta_margin

    def contains_r(self, r: float) -> bool:
        return self.r_min <= r <= self.r_max

    def contains_theta(self, theta: float) -> bool:
        return self.theta_min < theta < self.theta_max

    def check_r(self, r: float) -> None:
        if not self.contains_r(r):
            raise OutOfDomainError(
                f"r = {r} outside window [{self.r_min}, {self.r_max}]"
            )

    def check_theta(self, theta: float) -> None:
        if not self.contains_theta(theta):
            raise OutOfDomainError(
                f"theta = {theta} outside window ({self.theta_min}, {self.theta_max})"
            )

    def to_dict(self) -> Dict[str, Any]:
        return {
            'r_min': self.r_min,
            'r_max': self.r_max,
            'theta_margin': self.theta_margin,
        }


@dataclass(frozen=True)
class ModelParams:
    """
    Constants of the metric, the monopole gauge and the potential family.

    Attributes:
        m: Exact metric deformation
        delta: Branch of the conformal map (+1 or -1)
        nu: Angular period parameter, phi in [0, 2 pi / nu]
        alpha1: Metric profile constant
        beta1: Metric profile constant
        alpha2: Radial potential constant
        beta2: Radial potential constant
        k: Monopole strength
        ell: Gauge constant
        a: Angular potential constant
        b: Angular potential constant
        c: Angular potential constant
    """

    m: RationalM = field(default_factory=lambda: RationalM(1, 1))
    delta: int = 1
    nu: float = 1.0
    alpha1: float = 0.0
    beta1: float = 1.0
    alpha2: float = 0.0
    beta2: float = 0.0
    k: float = 1.0
    ell: float = 0.0
    a: float = 0.0
    b: float = 0.0
    c: float = 0.0

    def validate(self) -> bool:
        """
        Check the window-independent invariants.

        Raises:
            ZeroMonopoleError: k = 0
            DegenerateMetricError: alpha1 = beta1 = 0
            ParameterError: delta not in {-1, 1} or nu <= 0

        Returns:
            True if valid
        """
        if self.k == 0:
            raise ZeroMonopoleError("Monopole strength k must be nonzero")
        if self.m.m1 == 0:
            raise ZeroMError("m must be nonzero")
        if self.alpha1 == 0 and self.beta1 == 0:
            raise DegenerateMetricError("alpha1 = beta1 = 0 makes the metric vanish")
        if self.delta not in (-1, 1):
            raise ParameterError(f"delta must be +1 or -1, got {self.delta}")
        if not self.nu > 0:
            raise ParameterError(f"nu must be positive, got {self.nu}")
        return True

    def with_overrides(self, **changes: Any) -> "ModelParams":
        """Copy with some constants replaced."""
        if 'm' in changes:
            changes['m'] = RationalM.parse(changes['m'])
        return replace(self, **changes)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'm': str(self.m),
            'delta': self.delta,
            'nu': self.nu,
            'alpha1': self.alpha1,
            'beta1': self.beta1,
            'alpha2': self.alpha2,
            'beta2': self.beta2,
            'k': self.k,
            'ell': self.ell,
            'a': self.a,
            'b': self.b,
            'c': self.c,
        }


@dataclass(frozen=True)
class ValidatedParams:
    """
    Parameters that passed validation on a window, with cached constants.

    Attributes:
        params: The validated constants
        window: Window the metric positivity was checked on
        m_value: m as float (signed)
        m_squared: m^2
        k2m2: k^2 m^2
        phi_period: 2 pi / nu
    """

    params: ModelParams
    window: DomainWindow
    m_value: float
    m_squared: float
    k2m2: float
    phi_period: float

    @property
    def m1(self) -> int:
        return self.params.m.m1

    @property
    def m2(self) -> int:
        return self.params.m.m2

    def conformal_factor(self, r: float) -> float:
        """alpha1 + beta1 r."""
        return self.params.alpha1 + self.params.beta1 * r

    def with_params(self, **changes: Any) -> "ValidatedParams":
        """Re-validate a modified copy on the same window."""
        from monopole.physics.model import validate_params

        return validate_params(self.params.with_overrides(**changes), self.window)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'params': self.params.to_dict(),
            'window': self.window.to_dict(),
            'm_value': self.m_value,
            'k2m2': self.k2m2,
            'phi_period': self.phi_period,
        }
