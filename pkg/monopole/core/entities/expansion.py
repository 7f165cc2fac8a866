"""
Expansion Entities

Exact monomials of the binomial expansion of the complex product and the
parity certification report.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, Tuple

from monopole.core.entities.integrals import ParityBranch


@dataclass(frozen=True)
class Monomial:
    """
    coeff * u^exp_u * v^exp_v * Q1^exp_q1 * Q2^exp_q2 * sqrt(S)^exp_halfS.

    u = 2 p_r and v = sin(theta) p_theta carry no sqrt(S); the sqrt(S)
    factors of the radial and angular real parts are collected in exp_halfS.

    Attributes:
        coeff: Exact rational coefficient
        exp_u: Power of u
        exp_v: Power of v
        exp_q1: Power of Q1
        exp_q2: Power of Q2
        exp_halfS: Power of sqrt(S)
    """

    coeff: Fraction
    exp_u: int
    exp_v: int
    exp_q1: int
    exp_q2: int
    exp_halfS: int

    def __post_init__(self):
        exps = (self.exp_u, self.exp_v, self.exp_q1, self.exp_q2, self.exp_halfS)
        if any(e < 0 for e in exps):
            raise ValueError(f"Monomial exponents must be non-negative, got {exps}")
        if not isinstance(self.coeff, Fraction):
            object.__setattr__(self, 'coeff', Fraction(self.coeff))

    @property
    def key(self) -> Tuple[int, int, int, int, int]:
        return (self.exp_u, self.exp_v, self.exp_q1, self.exp_q2, self.exp_halfS)

    @property
    def degree(self) -> int:
        return self.exp_u + self.exp_v + self.exp_q1 + self.exp_q2

    @property
    def integer_S_power(self) -> bool:
        return self.exp_halfS % 2 == 0

    def evaluate(self, u: float, v: float, q1: float, q2: float, sqrt_s: float) -> float:
        return (
            float(self.coeff)
            * u ** self.exp_u
            * v ** self.exp_v
            * q1 ** self.exp_q1
            * q2 ** self.exp_q2
            * sqrt_s ** self.exp_halfS
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            'coeff': str(self.coeff),
            'exp_u': self.exp_u,
            'exp_v': self.exp_v,
            'exp_q1': self.exp_q1,
            'exp_q2': self.exp_q2,
            'exp_halfS': self.exp_halfS,
        }


@dataclass(frozen=True)
class ParityReport:
    """
    Outcome of certifying one (m1, m2) pair.

    Attributes:
        m1: Numerator
        m2: Denominator
        branch: Component kept
        divided_by_sqrtS: Whether sqrt(S) was divided out
        all_integer_S_powers: Every monomial carries an integer power of S
        monomial_count: Number of monomials after collection
        max_abs_coeff: Largest |coefficient|
        min_halfS: Smallest sqrt(S) exponent present
        max_halfS: Largest sqrt(S) exponent present
        odd_S_powers_present: Some monomial carries an odd power of S
        coprime: Whether gcd(m1, m2) = 1
    """

    m1: int
    m2: int
    branch: ParityBranch
    divided_by_sqrtS: bool
    all_integer_S_powers: bool
    monomial_count: int
    max_abs_coeff: Fraction
    min_halfS: int = 0
    max_halfS: int = 0
    odd_S_powers_present: bool = False
    coprime: bool = True

    def to_dict(self) -> Dict[str, Any]:
        return {
            'm1': self.m1,
            'm2': self.m2,
            'branch': self.branch.value,
            'divided_by_sqrtS': self.divided_by_sqrtS,
            'all_integer_S_powers': self.all_integer_S_powers,
            'monomial_count': self.monomial_count,
            'max_abs_coeff': str(self.max_abs_coeff),
            'min_halfS': self.min_halfS,
            'max_halfS': self.max_halfS,
            'odd_S_powers_present': self.odd_S_powers_present,
            'coprime': self.coprime,
        }
