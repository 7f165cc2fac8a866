"""
Parity Expander

Exact double-binomial expansion of w_r^m2 w_theta^m1 over the abstract
symbols u = 2 p_r, v = sin(theta) p_theta, Q1, Q2 and sqrt(S), with the
real/imaginary selection resolved on the powers of i. Certification checks
that every surviving monomial carries an integer power of S.
"""

import logging
import math
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

from monopole.core.entities.expansion import Monomial, ParityReport
from monopole.core.entities.integrals import ParityBranch, divides_by_sqrt_s
from monopole.core.entities.params import ValidatedParams
from monopole.core.entities.phase import PhasePoint
from monopole.core.exceptions import NotCoprimeError, ParameterError
from monopole.physics import integrals

logger = logging.getLogger(__name__)


def _check_pair(m1: int, m2: int, allow_non_coprime: bool) -> None:
    if m1 < 1 or m2 < 1:
        raise ParameterError(f"m1 and m2 must be positive, got ({m1}, {m2})")
    if not allow_non_coprime and math.gcd(m1, m2) != 1:
        raise NotCoprimeError(f"gcd({m1}, {m2}) = {math.gcd(m1, m2)} != 1")


def _i_power_component(power: int, branch: ParityBranch, conjugate: bool) -> int:
    """Selected component of (+-i)^power: -1, 0 or 1."""
    sign = -1 if conjugate and power % 2 == 1 else 1
    if branch == ParityBranch.REAL_PART:
        if power % 2 == 1:
            return 0
        return (-1) ** (power // 2)
    if power % 2 == 0:
        return 0
    return sign * (-1) ** ((power - 1) // 2)


def _sort_key(mono: Monomial) -> Tuple[int, ...]:
    # graded lexicographic, leading term first
    return (-mono.degree, -mono.exp_u, -mono.exp_v, -mono.exp_q1, -mono.exp_q2)


@lru_cache(maxsize=256)
def _expand_cached(m1: int, m2: int, conjugate: bool) -> Tuple[Monomial, ...]:
    branch = ParityBranch.for_denominator(m2)
    divide = divides_by_sqrt_s(m1, m2)
    collected: Dict[Tuple[int, int, int, int, int], Fraction] = {}

    for k in range(m2 + 1):
        radial = math.comb(m2, k) * (-1) ** (m2 - k)
        for j in range(m1 + 1):
            selected = _i_power_component(j + k, branch, conjugate)
            if selected == 0:
                continue
            half_s = (m2 - k) + (m1 - j)
            if divide:
                half_s -= 1
            key = (m2 - k, m1 - j, k, j, half_s)
            coeff = Fraction(radial * math.comb(m1, j) * selected)
            collected[key] = collected.get(key, Fraction(0)) + coeff

    monomials = [
        Monomial(coeff, *key) for key, coeff in collected.items() if coeff != 0
    ]
    return tuple(sorted(monomials, key=_sort_key))


def expand(
    m1: int,
    m2: int,
    conjugate: bool = False,
    allow_non_coprime: bool = False,
) -> List[Monomial]:
    """
    Expand the parity-selected component of (-u sqrtS + i Q1)^m2 (v sqrtS + i Q2)^m1.

    Args:
        m1: Numerator of m
        m2: Denominator of m
        conjugate: Expand with i replaced by -i
        allow_non_coprime: Skip the gcd check

    Raises:
        NotCoprimeError: gcd(m1, m2) != 1 and allow_non_coprime is False

    Returns:
        Monomials in graded lexicographic order, leading term first
    """
    _check_pair(m1, m2, allow_non_coprime)
    return list(_expand_cached(m1, m2, conjugate))


def parity_certify(m1: int, m2: int, allow_non_coprime: bool = False) -> ParityReport:
    """Check that only integer powers of S survive the branch selection and division."""
    monomials = expand(m1, m2, allow_non_coprime=allow_non_coprime)
    half_s = [mono.exp_halfS for mono in monomials]
    all_integer = all(e % 2 == 0 for e in half_s)
    odd_s = any(e % 2 == 0 and (e // 2) % 2 == 1 for e in half_s)

    report = ParityReport(
        m1=m1,
        m2=m2,
        branch=ParityBranch.for_denominator(m2),
        divided_by_sqrtS=divides_by_sqrt_s(m1, m2),
        all_integer_S_powers=all_integer,
        monomial_count=len(monomials),
        max_abs_coeff=max((abs(mono.coeff) for mono in monomials), default=Fraction(0)),
        min_halfS=min(half_s, default=0),
        max_halfS=max(half_s, default=0),
        odd_S_powers_present=odd_s,
        coprime=math.gcd(m1, m2) == 1,
    )
    logger.debug(f"Parity certificate ({m1}, {m2}): {report.to_dict()}")
    return report


def evaluate_expansion(monomials: List[Monomial], u: float, v: float, q1: float, q2: float, sqrt_s: float) -> float:
    return math.fsum(mono.evaluate(u, v, q1, q2, sqrt_s) for mono in monomials)


def numeric_consistency(
    vp: ValidatedParams,
    z: PhasePoint,
    m1: Optional[int] = None,
    m2: Optional[int] = None,
) -> float:
    """
    |symbolic - numeric calX| / max(1, |calX|) at z.

    When (m1, m2) is given, m is replaced by m1/m2 keeping its sign.
    """
    if m1 is not None and m2 is not None:
        vp = vp.with_params(m=Fraction(vp.params.m.sign * m1, m2))

    numeric = integrals.eval_calX(vp, z)
    cs = integrals.conserved_set(vp, z)
    q1 = float(integrals.q1_expr(vp, cs.E0, cs.E1, z.r))
    q2 = float(integrals.q2_expr(vp, cs.S, cs.p0, z.theta))
    symbolic = evaluate_expansion(
        expand(vp.m1, vp.m2),
        u=2.0 * z.p_r,
        v=math.sin(z.theta) * z.p_theta,
        q1=q1,
        q2=q2,
        sqrt_s=math.sqrt(cs.S),
    )
    return abs(symbolic - numeric.value) / max(1.0, abs(numeric.value))
