"""
Trajectory Entities

Integrated orbits, their conservation logs and the closure verdict.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np
import pandas as pd

from monopole.core.entities.phase import PHASE_FIELDS, PhasePoint

DRIFT_FIELDS = ('dH', 'dX1', 'dX2', 'dX')


@dataclass
class StepStats:
    """
    Counters collected while stepping.

    Attributes:
        accepted: Accepted steps
        rejected: Rejected steps (adaptive stepper only)
        newton_iterations: Total Newton iterations (implicit midpoint only)
        max_newton_iterations: Largest iteration count of a single step
    """

    accepted: int = 0
    rejected: int = 0
    newton_iterations: int = 0
    max_newton_iterations: int = 0

    def record_newton(self, iterations: int) -> None:
        self.newton_iterations += iterations
        self.max_newton_iterations = max(self.max_newton_iterations, iterations)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'accepted': self.accepted,
            'rejected': self.rejected,
            'newton_iterations': self.newton_iterations,
            'max_newton_iterations': self.max_newton_iterations,
        }


@dataclass(frozen=True)
class DomainEvent:
    """
    Early termination because the orbit left the window.

    Attributes:
        time: Time of the last accepted state
        reason: What was violated
        state: Last accepted state
    """

    time: float
    reason: str
    state: PhasePoint

    def to_dict(self) -> Dict[str, Any]:
        return {'time': self.time, 'reason': self.reason, 'state': self.state.to_dict()}


@dataclass
class Trajectory:
    """
    Sampled orbit with per-sample relative drift of (H, X1, X2, calX).

    Attributes:
        times: Strictly increasing sample times
        states: Array of shape (n, 6)
        drift_log: Array of shape (n, 4); NaN columns mark unavailable integrals
        step_stats: Stepping counters
        initial_values: Integral values at t = 0
        event: Domain exit, if any
    """

    times: np.ndarray
    states: np.ndarray
    drift_log: np.ndarray
    step_stats: StepStats = field(default_factory=StepStats)
    initial_values: List[float] = field(default_factory=list)
    event: Optional[DomainEvent] = None

    def __post_init__(self):
        """Validate trajectory after initialization."""
        self.validate()

    def validate(self) -> bool:
        """
        Validate array shapes and time ordering.

        Raises:
            ValueError: If validation fails

        Returns:
            True if valid
        """
        n = len(self.times)
        if self.states.shape != (n, 6):
            raise ValueError(f"states must have shape ({n}, 6), got {self.states.shape}")
        if self.drift_log.shape != (n, 4):
            raise ValueError(f"drift_log must have shape ({n}, 4), got {self.drift_log.shape}")
        if n > 1 and not np.all(np.diff(self.times) > 0):
            raise ValueError("Trajectory times must be strictly increasing")
        return True

    def __len__(self) -> int:
        return len(self.times)

    @property
    def terminated_early(self) -> bool:
        return self.event is not None

    @property
    def final_state(self) -> PhasePoint:
        return PhasePoint.from_array(self.states[-1])

    def state(self, index: int) -> PhasePoint:
        return PhasePoint.from_array(self.states[index])

    def max_drift(self) -> Dict[str, float]:
        """Largest |relative drift| per integral; NaN when unavailable."""
        result = {}
        for i, name in enumerate(DRIFT_FIELDS):
            column = np.abs(self.drift_log[:, i])
            result[name] = float('nan') if np.all(np.isnan(column)) else float(np.nanmax(column))
        return result

    def to_frame(self) -> pd.DataFrame:
        """Export in the CSV column order t, r, ..., dX."""
        frame = pd.DataFrame(self.states, columns=list(PHASE_FIELDS))
        frame.insert(0, 't', self.times)
        for i, name in enumerate(DRIFT_FIELDS):
            frame[name] = self.drift_log[:, i]
        return frame

    def summary(self) -> Dict[str, Any]:
        return {
            'samples': len(self),
            't_final': float(self.times[-1]),
            'max_drift': self.max_drift(),
            'initial_values': list(self.initial_values),
            'step_stats': self.step_stats.to_dict(),
            'domain_event': self.event.to_dict() if self.event else None,
        }


@dataclass(frozen=True)
class ClosureReport:
    """
    Recurrence verdict of an orbit.

    Attributes:
        bounded: Orbit stayed inside the window for the whole horizon
        min_recurrence_distance: Smallest scaled distance to the initial state after t_guard
        closes: min_recurrence_distance < eps_close
        epochs_scanned: Number of local distance minima examined
        t_guard: Guard time used
        t_min: Time of the smallest distance
        eps_close: Threshold used
        radial_period: Estimated radial period, if detected
    """

    bounded: bool
    min_recurrence_distance: float
    closes: bool
    epochs_scanned: int
    t_guard: float = 0.0
    t_min: float = float('nan')
    eps_close: float = 1e-3
    radial_period: Optional[float] = None

    def __post_init__(self):
        if self.closes and not self.bounded:
            raise ValueError("A closing orbit must be bounded")

    def to_dict(self) -> Dict[str, Any]:
        return {
            'bounded': self.bounded,
            'min_recurrence_distance': self.min_recurrence_distance,
            'closes': self.closes,
            'epochs_scanned': self.epochs_scanned,
            't_guard': self.t_guard,
            't_min': self.t_min,
            'eps_close': self.eps_close,
            'radial_period': self.radial_period,
        }
