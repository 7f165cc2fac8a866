"""
Counter-based random sampling.

Every sample index gets its own Philox stream keyed by (seed, index), so
a batch gives the same points whether it runs serially or in pieces.
"""

from typing import List

import numpy as np

from monopole.core.entities.params import DomainWindow
from monopole.core.entities.phase import PhasePoint

MOMENTUM_BOUND = 2.0
_MASK64 = (1 << 64) - 1


def point_generator(seed: int, index: int) -> np.random.Generator:
    """Generator for sample `index` of a run seeded with `seed`."""
    key = ((int(seed) & _MASK64) << 64) | (int(index) & _MASK64)
    return np.random.Generator(np.random.Philox(key=key))


def sample_phase_point(
    window: DomainWindow,
    seed: int,
    index: int,
    momentum_bound: float = MOMENTUM_BOUND,
) -> PhasePoint:
    rng = point_generator(seed, index)
    r = rng.uniform(window.r_min, window.r_max)
    theta = rng.uniform(window.theta_min, window.theta_max)
    phi = rng.uniform(0.0, 2.0 * np.pi)
    p_r, p_theta, p_phi = rng.uniform(-momentum_bound, momentum_bound, size=3)
    return PhasePoint(r, theta, phi, p_r, p_theta, p_phi)


def sample_phase_points(
    window: DomainWindow,
    seed: int,
    count: int,
    start: int = 0,
    momentum_bound: float = MOMENTUM_BOUND,
) -> List[PhasePoint]:
    return [
        sample_phase_point(window, seed, start + i, momentum_bound)
        for i in range(count)
    ]


def sample_radii(window: DomainWindow, seed: int, count: int) -> np.ndarray:
    return np.array([point_generator(seed, i).uniform(window.r_min, window.r_max) for i in range(count)])
