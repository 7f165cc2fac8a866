"""
Numerical helpers: finite differences, curvature, sampling.
"""

from .finite_difference import (
    central_difference,
    christoffel_symbols,
    fd_gradient,
    fd_jacobian,
    ricci_scalar,
)
from .sampling import point_generator, sample_phase_point, sample_phase_points

__all__ = [
    "central_difference",
    "christoffel_symbols",
    "fd_gradient",
    "fd_jacobian",
    "ricci_scalar",
    "point_generator",
    "sample_phase_point",
    "sample_phase_points",
]
