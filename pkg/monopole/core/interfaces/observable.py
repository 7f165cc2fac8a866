"""
Observable Interface

Defines the contract for phase-space functions handled by the bracket and
rank engines.
"""

from typing import Protocol


class IObservable(Protocol):
    """Scalar function of (r, theta, phi, p_r, p_theta, p_phi)."""

    name: str

    def __call__(self, r, theta, phi, p_r, p_theta, p_phi):
        """
        Evaluate on floats or Dual numbers.

        Args:
            r: Radial coordinate
            theta: Polar angle
            phi: Azimuth
            p_r: Radial momentum
            p_theta: Polar momentum
            p_phi: Azimuthal momentum

        Returns:
            Value of the same kind as the inputs
        """
        ...
