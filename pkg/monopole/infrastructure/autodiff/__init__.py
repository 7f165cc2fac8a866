"""
Forward-mode automatic differentiation.
"""

from .dual import Dual, gradient, hessian, value, value_and_gradient

__all__ = ["Dual", "gradient", "hessian", "value", "value_and_gradient"]
