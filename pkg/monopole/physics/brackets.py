"""
Poisson brackets and functional independence.

Observables are closures over the validated parameters; the bracket engine
differentiates them with dual numbers and never looks inside.
"""

import logging
from dataclasses import dataclass
from typing import Callable, List, Sequence, Tuple

import numpy as np

from monopole.core.entities.params import ValidatedParams
from monopole.core.entities.phase import PHASE_FIELDS, PhasePoint
from monopole.core.interfaces.observable import IObservable
from monopole.infrastructure.autodiff import dual
from monopole.physics import integrals
from monopole.physics.model import check_window, hamiltonian_expr

logger = logging.getLogger(__name__)

RANK_THRESHOLD = 1e-8


@dataclass(frozen=True)
class Observable:
    """Named phase-space function."""

    name: str
    fn: Callable

    def __call__(self, r, theta, phi, p_r, p_theta, p_phi):
        return self.fn(r, theta, phi, p_r, p_theta, p_phi)


def coordinate(name: str) -> Observable:
    """Projection onto one canonical variable."""
    index = PHASE_FIELDS.index(name)
    return Observable(name, lambda *x: x[index])


def hamiltonian_observable(vp: ValidatedParams) -> Observable:
    return Observable('H', lambda *x: hamiltonian_expr(vp, *x))


def x1_observable(vp: ValidatedParams) -> Observable:
    return Observable('X1', lambda *x: integrals.x1_expr(vp, *x))


def x2_observable(vp: ValidatedParams) -> Observable:
    return Observable('X2', lambda *x: integrals.x2_expr(vp, *x))


def calx_observable(vp: ValidatedParams) -> Observable:
    integrals.require_zero_gauge(vp)
    return Observable('calX', lambda *x: integrals.calx_expr(vp, *x))


def squared(obs: IObservable) -> Observable:
    return Observable(f'{obs.name}^2', lambda *x: obs(*x) * obs(*x))


def standard_observables(vp: ValidatedParams) -> List[Observable]:
    """(H, X1, X2, calX)."""
    return [
        hamiltonian_observable(vp),
        x1_observable(vp),
        x2_observable(vp),
        calx_observable(vp),
    ]


def observable_gradient(obs: IObservable, z: PhasePoint) -> np.ndarray:
    return np.real_if_close(dual.gradient(obs, z.as_array()))


def _bracket_from_gradients(df: np.ndarray, dg: np.ndarray) -> float:
    # q = (r, theta, phi) at 0..2, p at 3..5
    return float(np.dot(df[:3], dg[3:]) - np.dot(df[3:], dg[:3]))


def poisson_bracket_with_scale(
    f: IObservable,
    g: IObservable,
    vp: ValidatedParams,
    z: PhasePoint,
) -> Tuple[float, float]:
    """
    Canonical bracket {f, g} and its scale |grad f| |grad g|.

    Raises:
        OutOfDomainError: z outside the window
    """
    check_window(vp, z)
    df = observable_gradient(f, z)
    dg = observable_gradient(g, z)
    return _bracket_from_gradients(df, dg), float(np.linalg.norm(df) * np.linalg.norm(dg))


def poisson_bracket(f: IObservable, g: IObservable, vp: ValidatedParams, z: PhasePoint) -> float:
    return poisson_bracket_with_scale(f, g, vp, z)[0]


def independence_rank(
    vp: ValidatedParams,
    z: PhasePoint,
    observables: Sequence[IObservable],
    threshold: float = RANK_THRESHOLD,
) -> int:
    """
    Rank of the observables' Jacobian with respect to the phase variables.

    Rows are normalized before the SVD so that integrals of very different
    magnitude weigh equally; singular values below threshold * sigma_max
    are dropped.
    """
    check_window(vp, z)
    rows = []
    for obs in observables:
        grad = observable_gradient(obs, z)
        norm = np.linalg.norm(grad)
        rows.append(grad / norm if norm > 0 else grad)
    jacobian = np.vstack(rows)
    sigma = np.linalg.svd(jacobian, compute_uv=False)
    if sigma.size == 0 or sigma[0] == 0:
        return 0
    rank = int(np.sum(sigma > threshold * sigma[0]))
    logger.debug(f"Independence rank {rank} from singular values {sigma.tolist()}")
    return rank
