"""
Central finite differences.

Independent of the dual-number path; used for the magnetic-field check,
the numeric Ricci scalar and as a test oracle for exact derivatives.
"""

from typing import Callable

import numpy as np


def central_difference(fn: Callable[[float], float], x: float, step: float) -> float:
    """(f(x + h) - f(x - h)) / 2h."""
    return (fn(x + step) - fn(x - step)) / (2.0 * step)


def fd_gradient(fn: Callable[[np.ndarray], float], point: np.ndarray, step: float = 1e-6) -> np.ndarray:
    point = np.asarray(point, dtype=float)
    grad = np.zeros(point.size)
    for i in range(point.size):
        e = np.zeros(point.size)
        e[i] = step
        grad[i] = (fn(point + e) - fn(point - e)) / (2.0 * step)
    return grad


def fd_jacobian(fn: Callable[[np.ndarray], np.ndarray], point: np.ndarray, step: float = 1e-6) -> np.ndarray:
    """Jacobian with rows indexed by output and columns by input."""
    point = np.asarray(point, dtype=float)
    columns = []
    for i in range(point.size):
        e = np.zeros(point.size)
        e[i] = step
        columns.append((np.asarray(fn(point + e)) - np.asarray(fn(point - e))) / (2.0 * step))
    return np.stack(columns, axis=-1)


def christoffel_symbols(metric: Callable[[np.ndarray], np.ndarray], x: np.ndarray, step: float) -> np.ndarray:
    """
    Gamma[a, b, c] = 1/2 g^{ad} (d_b g_dc + d_c g_db - d_d g_bc).

    Args:
        metric: x -> (n, n) metric components
        x: Coordinates
        step: Difference step

    Returns:
        Array of shape (n, n, n)
    """
    x = np.asarray(x, dtype=float)
    n = x.size
    dg = np.zeros((n, n, n))  # dg[d, i, j] = d_d g_ij
    for d in range(n):
        e = np.zeros(n)
        e[d] = step
        dg[d] = (metric(x + e) - metric(x - e)) / (2.0 * step)
    g_inv = np.linalg.inv(metric(x))
    # lowered[d, b, c] = d_b g_dc + d_c g_db - d_d g_bc
    lowered = np.einsum('bdc->dbc', dg) + np.einsum('cdb->dbc', dg) - dg
    return 0.5 * np.einsum('ad,dbc->abc', g_inv, lowered)


def ricci_scalar(metric: Callable[[np.ndarray], np.ndarray], x: np.ndarray, step: float = 1e-4) -> float:
    """
    Ricci scalar from nested central differences of the metric.

    R_bc = d_a Gamma^a_bc - d_c Gamma^a_ba + Gamma^a_ad Gamma^d_bc - Gamma^a_cd Gamma^d_ba
    """
    x = np.asarray(x, dtype=float)
    n = x.size
    gamma = christoffel_symbols(metric, x, step)
    d_gamma = np.zeros((n, n, n, n))  # d_gamma[e, a, b, c] = d_e Gamma^a_bc
    for e_idx in range(n):
        e = np.zeros(n)
        e[e_idx] = step
        d_gamma[e_idx] = (
            christoffel_symbols(metric, x + e, step) - christoffel_symbols(metric, x - e, step)
        ) / (2.0 * step)

    ricci = (
        np.einsum('aabc->bc', d_gamma)
        - np.einsum('caba->bc', d_gamma)
        + np.einsum('aad,dbc->bc', gamma, gamma)
        - np.einsum('acd,dba->bc', gamma, gamma)
    )
    g_inv = np.linalg.inv(metric(x))
    return float(np.einsum('bc,bc->', g_inv, ricci))
