"""
Monopole Superintegrability Toolkit

Evaluation and verification of a family of superintegrable magnetic
monopole Hamiltonians on a curved three-dimensional background: the
model and its integrals, the parity-selected higher-order integral for
rational m, the Taub-NUT and planar charts, and orbit integration.
"""

__version__ = "1.0.0"

__all__ = ["__version__"]
