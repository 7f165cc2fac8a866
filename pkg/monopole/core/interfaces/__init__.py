"""
Core interfaces for the monopole toolkit.

These protocols define the contracts that the bracket engine and the time
integrators rely on.
"""

from .observable import IObservable
from .integrator import IStepper

__all__ = [
    "IObservable",
    "IStepper",
]
