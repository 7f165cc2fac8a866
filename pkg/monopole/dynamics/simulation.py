"""
Trajectory integration with conservation monitoring.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, List, Optional

import numpy as np

from monopole.core.entities.params import ValidatedParams
from monopole.core.entities.phase import PhasePoint
from monopole.core.entities.trajectory import DomainEvent, StepStats, Trajectory
from monopole.core.exceptions import DomainExitError, MonopoleError, ParameterError
from monopole.core.interfaces import IStepper
from monopole.dynamics.integrators import AdaptiveStepper, MidpointStepper, window_exit_reason
from monopole.physics import integrals
from monopole.physics.model import check_window, hamiltonian_expr

logger = logging.getLogger(__name__)

METHODS = ('midpoint', 'rk')
# below this |f0| the drift is reported in absolute terms
DRIFT_FLOOR = 1e-6


@dataclass(frozen=True)
class IntegrationOptions:
    """
    Integration settings.

    Attributes:
        dt: Fixed step (midpoint) or initial suggestion (rk)
        method: 'midpoint' or 'rk'
        newton_tol: Newton tolerance of the midpoint solve
        rk_tol: Local error tolerance of the adaptive stepper
        sample_every: Record every n-th accepted step
        dt_max: Upper bound on adaptive steps
    """

    dt: float = 1e-3
    method: str = 'midpoint'
    newton_tol: float = 1e-13
    rk_tol: float = 1e-10
    sample_every: int = 1
    dt_max: float = 0.05

    def __post_init__(self):
        if self.method not in METHODS:
            raise ParameterError(f"method must be one of {METHODS}, got {self.method!r}")
        if not self.dt > 0:
            raise ParameterError(f"dt must be positive, got {self.dt}")
        if self.sample_every < 1:
            raise ParameterError(f"sample_every must be >= 1, got {self.sample_every}")


@dataclass
class _Monitor:
    """Evaluates (H, X1, X2, calX) and their drift from t = 0."""

    vp: ValidatedParams
    functions: List[Optional[Callable]] = field(default_factory=list)
    initial: List[float] = field(default_factory=list)

    def start(self, state: np.ndarray) -> None:
        vp = self.vp
        self.functions = [
            lambda x: float(hamiltonian_expr(vp, *x)),
            lambda x: float(integrals.x1_expr(vp, *x)),
            lambda x: float(integrals.x2_expr(vp, *x)),
            lambda x: float(integrals.calx_expr(vp, *x)),
        ]
        self.initial = []
        for i, fn in enumerate(self.functions):
            try:
                if i == 3:
                    integrals.require_zero_gauge(vp)
                self.initial.append(fn(state))
            except MonopoleError as exc:
                logger.info(f"calX unavailable for drift monitoring: {exc}")
                self.functions[i] = None
                self.initial.append(float('nan'))

    def drift(self, state: np.ndarray) -> np.ndarray:
        row = np.full(4, np.nan)
        for i, fn in enumerate(self.functions):
            if fn is None:
                continue
            f0 = self.initial[i]
            scale = abs(f0) if abs(f0) > DRIFT_FLOOR else 1.0
            try:
                row[i] = (fn(state) - f0) / scale
            except MonopoleError:
                row[i] = np.nan
        return row


def _make_stepper(vp: ValidatedParams, options: IntegrationOptions) -> IStepper:
    if options.method == 'midpoint':
        return MidpointStepper(vp, options.newton_tol)
    return AdaptiveStepper(vp, options.rk_tol, options.dt_max)


def integrate(
    vp: ValidatedParams,
    z0: PhasePoint,
    t_end: float,
    options: IntegrationOptions = IntegrationOptions(),
) -> Trajectory:
    """
    Integrate from t = 0 to t_end and log the drift of the integrals.

    A departure from the window ends the run with a DomainEvent and the
    partial trajectory.

    Args:
        vp: Validated parameters
        z0: Initial state inside the window
        t_end: Final time
        options: Integration settings

    Raises:
        OutOfDomainError: z0 outside the window
        NewtonDivergedError, StepUnderflowError: propagated from the steppers
    """
    check_window(vp, z0)
    if not t_end > 0:
        raise ParameterError(f"t_end must be positive, got {t_end}")

    stepper = _make_stepper(vp, options)
    monitor = _Monitor(vp)
    state = z0.as_array()
    monitor.start(state)

    times = [0.0]
    states = [state.copy()]
    drifts = [np.where(np.isnan(monitor.initial), np.nan, 0.0)]
    stats = StepStats()
    event: Optional[DomainEvent] = None

    logger.info(
        f"Integrating m={vp.params.m} with {options.method} to t={t_end} (dt={options.dt})"
    )

    t = 0.0
    dt = options.dt
    steps = 0
    end_tol = 1e-12 * max(1.0, t_end)
    while t_end - t > end_tol:
        h = min(dt, t_end - t)
        try:
            new_state, dt_used, dt_next = stepper.advance(state, h, stats)
        except DomainExitError as exc:
            event = DomainEvent(time=t, reason=str(exc), state=PhasePoint.from_array(state))
            break

        reason = window_exit_reason(vp, new_state)
        if reason:
            event = DomainEvent(time=t, reason=reason, state=PhasePoint.from_array(state))
            break

        state = new_state
        t += dt_used
        if options.method == 'rk':
            dt = dt_next
        steps += 1

        at_end = t_end - t <= end_tol
        if steps % options.sample_every == 0 or at_end:
            times.append(t)
            states.append(state.copy())
            drifts.append(monitor.drift(state))

    if event is not None:
        logger.warning(f"Domain exit at t={event.time}: {event.reason}")
        if times[-1] < event.time:
            times.append(event.time)
            states.append(state.copy())
            drifts.append(monitor.drift(state))

    trajectory = Trajectory(
        times=np.array(times),
        states=np.array(states),
        drift_log=np.array(drifts),
        step_stats=stats,
        initial_values=list(monitor.initial),
        event=event,
    )
    logger.info(
        f"Finished at t={trajectory.times[-1]:.6g} after {stats.accepted} steps; "
        f"max drift {trajectory.max_drift()}"
    )
    return trajectory


def max_relative_drift(trajectory: Trajectory) -> float:
    """Largest drift over the available integrals."""
    values = [v for v in trajectory.max_drift().values() if not math.isnan(v)]
    return max(values) if values else float('nan')
