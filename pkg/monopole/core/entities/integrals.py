"""
Integral Entities

Values of the conserved quantities at a phase point and the complex
factorization behind the polynomial integral.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict


class ParityBranch(Enum):
    """Component of the product kept by the parity selection."""
    REAL_PART = "RealPart"
    IMAG_PART = "ImagPart"

    @classmethod
    def for_denominator(cls, m2: int) -> "ParityBranch":
        """Real part for odd m2, imaginary part for even m2."""
        return cls.REAL_PART if m2 % 2 == 1 else cls.IMAG_PART


def divides_by_sqrt_s(m1: int, m2: int) -> bool:
    """The polynomial integral is divided by sqrt(S) iff m1 is even and m2 odd."""
    return m1 % 2 == 0 and m2 % 2 == 1


@dataclass(frozen=True)
class ConservedSet:
    """
    Conserved values at one phase point (gauge ell = 0).

    Attributes:
        E0: Hamiltonian value
        E1: Total angular momentum X2
        p0: Azimuthal momentum
        S: E1 + k^2 m^2
    """

    E0: float
    E1: float
    p0: float
    S: float

    @classmethod
    def build(cls, E0: float, E1: float, p0: float, k2m2: float) -> "ConservedSet":
        return cls(E0=E0, E1=E1, p0=p0, S=E1 + k2m2)

    def to_dict(self) -> Dict[str, Any]:
        return {'E0': self.E0, 'E1': self.E1, 'p0': self.p0, 'S': self.S}


@dataclass(frozen=True)
class ComplexFactorization:
    """
    Complex factors whose product generates the polynomial integral.

    Attributes:
        w_r: Radial factor
        w_theta: Angular factor
        P: w_r**m2 * w_theta**m1
        parity_branch: Component kept
        sqrtS_division: Whether the kept component is divided by sqrt(S)
    """

    w_r: complex
    w_theta: complex
    P: complex
    parity_branch: ParityBranch
    sqrtS_division: bool

    def __post_init__(self):
        if not isinstance(self.parity_branch, ParityBranch):
            raise ValueError(f"parity_branch must be a ParityBranch, got {self.parity_branch!r}")

    @property
    def kept(self) -> float:
        """Component selected by the branch."""
        if self.parity_branch == ParityBranch.REAL_PART:
            return self.P.real
        return self.P.imag

    @property
    def discarded(self) -> float:
        """Complementary component."""
        if self.parity_branch == ParityBranch.REAL_PART:
            return self.P.imag
        return self.P.real

    def to_dict(self) -> Dict[str, Any]:
        return {
            'w_r': [self.w_r.real, self.w_r.imag],
            'w_theta': [self.w_theta.real, self.w_theta.imag],
            'P': [self.P.real, self.P.imag],
            'parity_branch': self.parity_branch.value,
            'sqrtS_division': self.sqrtS_division,
        }


@dataclass(frozen=True)
class CalXValue:
    """
    Evaluated polynomial integral.

    Attributes:
        value: Parity-selected component, halved convention, sqrt(S)-divided when required
        offbranch_residual: |discarded component| / max(1, |P|)
        factorization: The complex factors used
    """

    value: float
    offbranch_residual: float
    factorization: ComplexFactorization

    def to_dict(self) -> Dict[str, Any]:
        return {
            'value': self.value,
            'offbranch_residual': self.offbranch_residual,
            'factorization': self.factorization.to_dict(),
        }


@dataclass(frozen=True)
class HamiltonianParts:
    """
    Separated contributions to H.

    Attributes:
        kinetic: Metric term with covariant momenta
        radial_potential: W1(r)
        angular_potential: W2(theta) / (r (alpha1 + beta1 r))
    """

    kinetic: float
    radial_potential: float
    angular_potential: float

    @property
    def total(self) -> float:
        return self.kinetic + self.radial_potential + self.angular_potential

    def to_dict(self) -> Dict[str, Any]:
        return {
            'kinetic': self.kinetic,
            'radial_potential': self.radial_potential,
            'angular_potential': self.angular_potential,
            'total': self.total,
        }
