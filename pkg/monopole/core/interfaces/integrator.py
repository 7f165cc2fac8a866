"""
Stepper Interface

Defines the contract for one-step time integrators.
"""

from typing import Protocol

import numpy as np

from monopole.core.entities.trajectory import StepStats


class IStepper(Protocol):
    """Advances a 6-dimensional state by one accepted step."""

    name: str

    def advance(self, state: np.ndarray, dt: float, stats: StepStats) -> tuple:
        """
        Take one accepted step.

        Args:
            state: Current state (r, theta, phi, p_r, p_theta, p_phi)
            dt: Suggested step
            stats: Counters updated in place

        Returns:
            (next_state, dt_used, dt_next)
        """
        ...
