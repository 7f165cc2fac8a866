"""
Time Steppers

Hamilton's equations, the implicit midpoint rule solved by Newton with
exact Hessians, and an embedded Dormand-Prince 5(4) pair with PI step
control used as a cross-check integrator.
"""

import logging
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from monopole.core.entities.params import ValidatedParams
from monopole.core.entities.phase import PhasePoint
from monopole.core.entities.trajectory import StepStats
from monopole.core.exceptions import (
    DomainExitError,
    NewtonDivergedError,
    OutOfDomainError,
    StepUnderflowError,
)
from monopole.infrastructure.autodiff import dual
from monopole.physics.model import check_chart, check_window, hamiltonian_expr, hamiltonian_hessian

logger = logging.getLogger(__name__)

MAX_NEWTON_ITERATIONS = 25
MAX_DAMPING_HALVINGS = 8
MIN_STEP = 1e-12

# Dormand-Prince 5(4)
_C = np.array([0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0])
_A = [
    [],
    [1 / 5],
    [3 / 40, 9 / 40],
    [44 / 45, -56 / 15, 32 / 9],
    [19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729],
    [9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656],
    [35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84],
]
_B5 = np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0])
_B4 = np.array([5179 / 57600, 0.0, 7571 / 16695, 393 / 640, -92097 / 339200, 187 / 2100, 1 / 40])
_ERROR_ORDER = 5.0


def _flow(grad: np.ndarray) -> np.ndarray:
    """(dH/dp, -dH/dq)."""
    return np.concatenate([grad[3:], -grad[:3]])


def _rhs_state(vp: ValidatedParams, state: np.ndarray) -> np.ndarray:
    try:
        check_chart(vp, state[0], state[1])
    except OutOfDomainError as exc:
        raise DomainExitError(str(exc), state=state) from exc
    grad = dual.gradient(lambda *x: hamiltonian_expr(vp, *x), state)
    return _flow(np.asarray(grad, dtype=float))


def hamilton_rhs(vp: ValidatedParams, z: PhasePoint) -> np.ndarray:
    """
    (dr/dt, dtheta/dt, dphi/dt, dp_r/dt, dp_theta/dt, dp_phi/dt).

    Raises:
        OutOfDomainError: z outside the window
    """
    check_window(vp, z)
    return _rhs_state(vp, z.as_array())


def window_exit_reason(vp: ValidatedParams, state: np.ndarray) -> str:
    """Empty string if the state lies in the window."""
    r, theta = state[0], state[1]
    if not vp.window.contains_r(r):
        return f"r = {r} left [{vp.window.r_min}, {vp.window.r_max}]"
    if not vp.window.contains_theta(theta):
        return f"theta = {theta} left ({vp.window.theta_min}, {vp.window.theta_max})"
    return ""


def midpoint_solve(
    vp: ValidatedParams,
    state: np.ndarray,
    dt: float,
    tol: float = 1e-13,
) -> Tuple[np.ndarray, int]:
    """
    Solve z' = z + dt f((z + z')/2) by damped Newton.

    Returns:
        (z', Newton iterations)
    """
    if dt == 0:
        return state.copy(), 0

    identity = np.eye(6)
    candidate = state + dt * _rhs_state(vp, state)

    for iteration in range(1, MAX_NEWTON_ITERATIONS + 1):
        mid = 0.5 * (state + candidate)
        try:
            _, grad, hess = hamiltonian_hessian(vp, mid)
        except OutOfDomainError as exc:
            raise DomainExitError(f"Midpoint left the chart: {exc}", state=state) from exc

        residual = candidate - state - dt * _flow(grad)
        # d flow / d state = J0 Hess; midpoint halves it
        flow_jacobian = np.vstack([hess[3:], -hess[:3]])
        jacobian = identity - 0.5 * dt * flow_jacobian
        delta = np.linalg.solve(jacobian, -residual)

        lam = 1.0
        for _ in range(MAX_DAMPING_HALVINGS):
            trial = candidate + lam * delta
            mid_trial = 0.5 * (state + trial)
            if mid_trial[0] > 0 and 0 < mid_trial[1] < np.pi and vp.conformal_factor(mid_trial[0]) > 0:
                break
            lam *= 0.5
        candidate = candidate + lam * delta

        if np.max(np.abs(lam * delta)) <= tol * max(1.0, np.max(np.abs(candidate))):
            return candidate, iteration

    raise NewtonDivergedError(
        f"Implicit midpoint Newton did not converge in {MAX_NEWTON_ITERATIONS} iterations "
        f"(dt={dt}, last correction {np.max(np.abs(delta)):.3e})"
    )


def step_implicit_midpoint(
    vp: ValidatedParams,
    z: PhasePoint,
    dt: float,
    tol_newton: float = 1e-13,
) -> PhasePoint:
    """
    One implicit midpoint step.

    Raises:
        NewtonDivergedError: no convergence after 25 iterations
        DomainExitError: the midpoint or the new state leaves the window
    """
    state = z.as_array()
    new_state, _ = midpoint_solve(vp, state, dt, tol_newton)
    mid = 0.5 * (state + new_state)
    reason = window_exit_reason(vp, mid) or window_exit_reason(vp, new_state)
    if reason:
        raise DomainExitError(reason, state=state)
    return PhasePoint.from_array(new_state)


@dataclass(frozen=True)
class RKStepResult:
    """
    Outcome of one accepted adaptive step.

    Attributes:
        z_next: New state
        dt_used: Step actually taken
        dt_next: Suggested next step
        error_estimate: Scaled local error of the accepted step
        rejected: Rejected trials before acceptance
    """

    z_next: np.ndarray
    dt_used: float
    dt_next: float
    error_estimate: float
    rejected: int = 0


class AdaptiveStepper:
    """
    Dormand-Prince 5(4) with a PI step-size controller.

    The local error is max|y5 - y4| / (1 + max|y|) and a step is accepted
    when it is at most `tol`.
    """

    name = "rk"
    SAFETY = 0.9
    ALPHA = 0.7 / _ERROR_ORDER
    BETA = 0.4 / _ERROR_ORDER
    MIN_FACTOR = 0.2
    MAX_FACTOR = 5.0

    def __init__(self, vp: ValidatedParams, tol: float = 1e-10, dt_max: float = np.inf):
        self.vp = vp
        self.tol = tol
        self.dt_max = dt_max
        self._previous_error = 1e-4

    def _trial(self, state: np.ndarray, h: float) -> Tuple[np.ndarray, float]:
        stages = []
        for i in range(7):
            y = state.copy()
            for j, a in enumerate(_A[i]):
                if a:
                    y = y + h * a * stages[j]
            stages.append(_rhs_state(self.vp, y))
        k = np.array(stages)
        y5 = state + h * (_B5 @ k)
        y4 = state + h * (_B4 @ k)
        error = np.max(np.abs(y5 - y4)) / (1.0 + max(np.max(np.abs(state)), np.max(np.abs(y5))))
        return y5, error

    def attempt(self, state: np.ndarray, dt_suggest: float) -> RKStepResult:
        """
        Retry with shrinking steps until the error estimate meets tol.

        Raises:
            StepUnderflowError: |dt| below 1e-12
        """
        direction = 1.0 if dt_suggest >= 0 else -1.0
        h = direction * min(abs(dt_suggest), self.dt_max)
        rejected = 0
        while True:
            if abs(h) < MIN_STEP:
                raise StepUnderflowError(f"Adaptive step fell below {MIN_STEP} (h={h})")
            try:
                y5, error = self._trial(state, h)
            except DomainExitError:
                # a stage left the chart; shrink as for a failed error test
                rejected += 1
                h *= self.MIN_FACTOR
                continue

            if error <= self.tol:
                if error == 0:
                    factor = self.MAX_FACTOR
                else:
                    factor = self.SAFETY * (self.tol / error) ** self.ALPHA * (
                        self._previous_error / self.tol
                    ) ** self.BETA
                factor = min(self.MAX_FACTOR, max(self.MIN_FACTOR, factor))
                self._previous_error = max(error, 1e-4 * self.tol)
                h_next = direction * min(abs(h) * factor, self.dt_max)
                return RKStepResult(y5, h, h_next, error, rejected)

            rejected += 1
            factor = max(self.MIN_FACTOR, self.SAFETY * (self.tol / error) ** (1.0 / _ERROR_ORDER))
            h *= factor

    def advance(self, state: np.ndarray, dt: float, stats: StepStats) -> Tuple[np.ndarray, float, float]:
        result = self.attempt(state, dt)
        stats.accepted += 1
        stats.rejected += result.rejected
        return result.z_next, result.dt_used, result.dt_next


class MidpointStepper:
    """Fixed-step implicit midpoint rule."""

    name = "midpoint"

    def __init__(self, vp: ValidatedParams, tol: float = 1e-13):
        self.vp = vp
        self.tol = tol

    def advance(self, state: np.ndarray, dt: float, stats: StepStats) -> Tuple[np.ndarray, float, float]:
        new_state, iterations = midpoint_solve(self.vp, state, dt, self.tol)
        mid = 0.5 * (state + new_state)
        reason = window_exit_reason(self.vp, mid)
        if reason:
            raise DomainExitError(f"Midpoint {reason}", state=state)
        stats.accepted += 1
        stats.record_newton(iterations)
        return new_state, dt, dt


def step_rk_adaptive(
    vp: ValidatedParams,
    z: PhasePoint,
    dt_suggest: float,
    tol: float = 1e-10,
) -> RKStepResult:
    """
    One accepted Dormand-Prince step.

    Raises:
        StepUnderflowError: dt below 1e-12
        DomainExitError: the accepted state leaves the window
    """
    state = z.as_array()
    result = AdaptiveStepper(vp, tol).attempt(state, dt_suggest)
    reason = window_exit_reason(vp, result.z_next)
    if reason:
        raise DomainExitError(reason, state=state)
    return result


def propagate(
    vp: ValidatedParams,
    state: np.ndarray,
    duration: float,
    tol: float = 1e-12,
    dt_max: float = 0.05,
) -> np.ndarray:
    """Advance exactly `duration` with the adaptive stepper (no window checks)."""
    stepper = AdaptiveStepper(vp, tol, dt_max)
    elapsed = 0.0
    h = min(dt_max, abs(duration)) * (1.0 if duration >= 0 else -1.0)
    current = state.copy()
    while abs(duration - elapsed) > 1e-15 * max(1.0, abs(duration)):
        remaining = duration - elapsed
        if abs(h) > abs(remaining):
            h = remaining
        result = stepper.attempt(current, h)
        current = result.z_next
        elapsed += result.dt_used
        h = result.dt_next
    return current
