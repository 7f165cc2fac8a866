"""
Hamiltonian flow: steppers, trajectory integration and orbit closure.
"""

from .integrators import (
    AdaptiveStepper,
    MidpointStepper,
    RKStepResult,
    hamilton_rhs,
    propagate,
    step_implicit_midpoint,
    step_rk_adaptive,
)
from .simulation import IntegrationOptions, integrate, max_relative_drift
from .closure import (
    RecurrenceMetric,
    circular_initial_state,
    circular_orbit_radius,
    closure_analysis,
    estimate_radial_period,
)

__all__ = [
    "AdaptiveStepper",
    "MidpointStepper",
    "RKStepResult",
    "hamilton_rhs",
    "propagate",
    "step_implicit_midpoint",
    "step_rk_adaptive",
    "IntegrationOptions",
    "integrate",
    "max_relative_drift",
    "RecurrenceMetric",
    "circular_initial_state",
    "circular_orbit_radius",
    "closure_analysis",
    "estimate_radial_period",
]
