"""
Orbit Closure

Recurrence analysis of integrated orbits and circular-orbit initial data.
"""

import logging
import math
from typing import Optional, Tuple

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from monopole.core.entities.params import ValidatedParams
from monopole.core.entities.phase import PhasePoint
from monopole.core.entities.trajectory import ClosureReport, Trajectory
from monopole.core.exceptions import MonopoleError, ParameterError
from monopole.dynamics.integrators import propagate
from monopole.dynamics.simulation import IntegrationOptions, integrate
from monopole.infrastructure.autodiff import dual
from monopole.physics.model import hamiltonian_expr

logger = logging.getLogger(__name__)

GUARD_PERIODS = 5
REFINED_MINIMA = 8
CLOSURE_OPTIONS = IntegrationOptions(dt=0.01, method='rk', rk_tol=1e-11, dt_max=0.02)


class RecurrenceMetric:
    """
    Scaled distance of a state to the initial state.

    r is compared relative to r0, angles in radians with phi wrapped modulo
    2 pi / nu, momenta relative to max(1, |p_r0|, |p_theta0|).
    """

    def __init__(self, vp: ValidatedParams, z0: np.ndarray):
        self.z0 = np.asarray(z0, dtype=float)
        self.period = vp.phi_period
        self.p_scale = max(1.0, abs(self.z0[3]), abs(self.z0[4]))

    def __call__(self, state: np.ndarray) -> float:
        d_phi = math.remainder(state[2] - self.z0[2], self.period)
        components = (
            (state[0] - self.z0[0]) / self.z0[0],
            state[1] - self.z0[1],
            d_phi,
            (state[3] - self.z0[3]) / self.p_scale,
            (state[4] - self.z0[4]) / self.p_scale,
            (state[5] - self.z0[5]) / self.p_scale,
        )
        return math.sqrt(math.fsum(c * c for c in components))


def estimate_radial_period(trajectory: Trajectory) -> Optional[float]:
    """Mean spacing of upward zero crossings of p_r, if at least two exist."""
    times = trajectory.times
    p_r = trajectory.states[:, 3]
    r = trajectory.states[:, 0]
    if np.ptp(r) < 1e-9 * max(1.0, abs(r[0])):
        return None
    crossings = []
    for i in range(1, len(p_r)):
        if p_r[i - 1] < 0 <= p_r[i]:
            frac = -p_r[i - 1] / (p_r[i] - p_r[i - 1])
            crossings.append(times[i - 1] + frac * (times[i] - times[i - 1]))
    if len(crossings) < 2:
        return None
    return float(np.mean(np.diff(crossings)))


def _local_minima(distances: np.ndarray, start: int) -> np.ndarray:
    idx = np.arange(max(start, 1), len(distances) - 1)
    mask = (distances[idx] <= distances[idx - 1]) & (distances[idx] <= distances[idx + 1])
    return idx[mask]


def closure_analysis(
    vp: ValidatedParams,
    z0: PhasePoint,
    t_end: float,
    eps_close: float = 1e-3,
    t_guard: Optional[float] = None,
    options: IntegrationOptions = CLOSURE_OPTIONS,
) -> ClosureReport:
    """
    Decide whether the orbit through z0 returns to z0.

    The orbit is integrated to t_end; local minima of the recurrence
    distance after t_guard are refined by re-propagating from the
    preceding sample. t_guard defaults to five radial periods, or t_end / 4
    when no radial oscillation is detected.

    Args:
        vp: Validated parameters
        z0: Initial state
        t_end: Horizon
        eps_close: Closure threshold in scaled units
        t_guard: Minimum time before recurrences count
        options: Integration settings

    Returns:
        ClosureReport with the raw minimum distance
    """
    if not eps_close > 0:
        raise ParameterError(f"eps_close must be positive, got {eps_close}")

    trajectory = integrate(vp, z0, t_end, options)
    bounded = not trajectory.terminated_early
    metric = RecurrenceMetric(vp, z0.as_array())
    distances = np.array([metric(s) for s in trajectory.states])
    radial_period = estimate_radial_period(trajectory)

    horizon = float(trajectory.times[-1])
    if t_guard is None:
        t_guard = GUARD_PERIODS * radial_period if radial_period else t_end / 4.0
        t_guard = min(t_guard, t_end / 2.0)

    start = int(np.searchsorted(trajectory.times, t_guard, side='right'))
    if start >= len(distances):
        logger.warning(f"No samples after t_guard={t_guard} (orbit ended at t={horizon})")
        return ClosureReport(
            bounded=bounded,
            min_recurrence_distance=float('inf'),
            closes=False,
            epochs_scanned=0,
            t_guard=t_guard,
            eps_close=eps_close,
            radial_period=radial_period,
        )

    minima = _local_minima(distances, start)
    best_index = start + int(np.argmin(distances[start:]))
    best_distance = float(distances[best_index])
    best_time = float(trajectory.times[best_index])

    for i in minima[np.argsort(distances[minima])][:REFINED_MINIMA]:
        if i + 1 >= len(distances):
            continue
        refined, t_refined = _refine_minimum(vp, trajectory, metric, int(i))
        if refined < best_distance:
            best_distance, best_time = refined, t_refined

    closes = bounded and best_distance < eps_close
    report = ClosureReport(
        bounded=bounded,
        min_recurrence_distance=best_distance,
        closes=closes,
        epochs_scanned=int(len(minima)),
        t_guard=t_guard,
        t_min=best_time,
        eps_close=eps_close,
        radial_period=radial_period,
    )
    logger.info(f"Closure analysis: {report.to_dict()}")
    return report


def _refine_minimum(
    vp: ValidatedParams,
    trajectory: Trajectory,
    metric: RecurrenceMetric,
    index: int,
) -> Tuple[float, float]:
    t_lo = float(trajectory.times[index - 1])
    t_hi = float(trajectory.times[index + 1])
    anchor = trajectory.states[index - 1]

    def distance_at(t: float) -> float:
        try:
            return metric(propagate(vp, anchor, t - t_lo))
        except MonopoleError:
            return float('inf')

    result = minimize_scalar(
        distance_at,
        bounds=(t_lo, t_hi),
        method='bounded',
        options={'xatol': 1e-10 * max(1.0, t_hi)},
    )
    return float(result.fun), float(result.x)


def circular_orbit_radius(
    vp: ValidatedParams,
    theta: float = math.pi / 2,
    p_theta: float = 0.0,
    p_phi: float = 0.0,
    grid: int = 200,
) -> float:
    """
    Radius with dH/dr = 0 at p_r = 0, found by bracketing on the window and brentq.

    Raises:
        ParameterError: no sign change of dH/dr on the window
    """
    def dh_dr(r: float) -> float:
        x = dual.Dual.variables([r])[0]
        return float(hamiltonian_expr(vp, x, theta, 0.0, 0.0, p_theta, p_phi).grad[0])

    radii = np.linspace(vp.window.r_min, vp.window.r_max, grid)
    values = np.array([dh_dr(r) for r in radii])
    for i in range(grid - 1):
        if values[i] == 0:
            return float(radii[i])
        if values[i] * values[i + 1] < 0:
            root = brentq(dh_dr, radii[i], radii[i + 1], xtol=1e-14, rtol=1e-14)
            logger.debug(f"Circular orbit radius {root}")
            return float(root)
    raise ParameterError("dH/dr has no sign change on the window; no circular orbit")


def circular_initial_state(
    vp: ValidatedParams,
    theta: float = math.pi / 2,
    p_theta: float = 0.0,
    p_phi: float = 0.0,
) -> PhasePoint:
    r = circular_orbit_radius(vp, theta, p_theta, p_phi)
    return PhasePoint(r, theta, 0.0, 0.0, p_theta, p_phi)
