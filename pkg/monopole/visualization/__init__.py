"""
Visualization helpers for trajectories.
"""

from .orbit_chart import OrbitChart

__all__ = ["OrbitChart"]
