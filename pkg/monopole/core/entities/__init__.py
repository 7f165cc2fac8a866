"""
Core domain entities for the monopole toolkit.
"""

from .params import RationalM, ModelParams, DomainWindow, ValidatedParams
from .phase import PhasePoint, TaubNutPoint, PHASE_FIELDS, TAUBNUT_FIELDS
from .integrals import (
    ConservedSet,
    ComplexFactorization,
    CalXValue,
    HamiltonianParts,
    ParityBranch,
)
from .expansion import Monomial, ParityReport
from .trajectory import Trajectory, ClosureReport, StepStats, DomainEvent, DRIFT_FIELDS
from .reduction import PWParams

__all__ = [
    "RationalM",
    "ModelParams",
    "DomainWindow",
    "ValidatedParams",
    "PhasePoint",
    "TaubNutPoint",
    "PHASE_FIELDS",
    "TAUBNUT_FIELDS",
    "ConservedSet",
    "ComplexFactorization",
    "CalXValue",
    "HamiltonianParts",
    "ParityBranch",
    "Monomial",
    "ParityReport",
    "Trajectory",
    "ClosureReport",
    "StepStats",
    "DomainEvent",
    "DRIFT_FIELDS",
    "PWParams",
]
