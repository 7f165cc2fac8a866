"""
Forward-mode hyper-dual numbers.

A Dual carries a value, its gradient with respect to the six phase
variables and, optionally, the Hessian. Arithmetic propagates both through
the chain rule so that any function written with the helpers in this module
(sin, cos, sqrt, ...) is differentiated exactly. Values may be complex.
"""

import math
from typing import Callable, Optional, Sequence, Tuple, Union

import numpy as np

Number = Union[int, float, complex]


class Dual:
    """Second-order forward-mode number."""

    __slots__ = ('val', 'grad', 'hess')
    __array_ufunc__ = None

    def __init__(self, val: Number, grad: np.ndarray, hess: Optional[np.ndarray] = None):
        self.val = val
        self.grad = grad
        self.hess = hess

    @classmethod
    def variables(cls, point: Sequence[float], with_hessian: bool = False) -> Tuple["Dual", ...]:
        """Seed one independent variable per coordinate."""
        n = len(point)
        eye = np.eye(n)
        return tuple(
            cls(float(point[i]), eye[i].copy(), np.zeros((n, n)) if with_hessian else None)
            for i in range(n)
        )

    @classmethod
    def constant_like(cls, val: Number, like: "Dual") -> "Dual":
        hess = None if like.hess is None else np.zeros_like(like.hess)
        return cls(val, np.zeros_like(like.grad), hess)

    def _chain(self, f0: Number, f1: Number, f2: Number) -> "Dual":
        grad = f1 * self.grad
        hess = None
        if self.hess is not None:
            hess = f1 * self.hess + f2 * np.outer(self.grad, self.grad)
        return Dual(f0, grad, hess)

    # arithmetic

    def __add__(self, other):
        if isinstance(other, Dual):
            hess = None if self.hess is None else self.hess + other.hess
            return Dual(self.val + other.val, self.grad + other.grad, hess)
        return Dual(self.val + other, self.grad, self.hess)

    __radd__ = __add__

    def __neg__(self):
        hess = None if self.hess is None else -self.hess
        return Dual(-self.val, -self.grad, hess)

    def __pos__(self):
        return self

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Dual):
            grad = self.val * other.grad + other.val * self.grad
            hess = None
            if self.hess is not None:
                cross = np.outer(self.grad, other.grad)
                hess = self.val * other.hess + other.val * self.hess + cross + cross.T
            return Dual(self.val * other.val, grad, hess)
        hess = None if self.hess is None else self.hess * other
        return Dual(self.val * other, self.grad * other, hess)

    __rmul__ = __mul__

    def reciprocal(self) -> "Dual":
        inv = 1.0 / self.val
        return self._chain(inv, -inv * inv, 2.0 * inv * inv * inv)

    def __truediv__(self, other):
        if isinstance(other, Dual):
            return self * other.reciprocal()
        return self * (1.0 / other)

    def __rtruediv__(self, other):
        return self.reciprocal() * other

    def __pow__(self, power):
        if isinstance(power, Dual):
            raise TypeError("Dual exponents are not supported")
        if isinstance(power, (int, np.integer)):
            n = int(power)
            if n == 0:
                return Dual.constant_like(1.0, self)
            if n == 1:
                return self
            if n < 0:
                return (self ** (-n)).reciprocal()
            x = self.val
            xn2 = x ** (n - 2)
            return self._chain(xn2 * x * x, n * xn2 * x, n * (n - 1) * xn2)
        x = self.val
        return self._chain(x ** power, power * x ** (power - 1), power * (power - 1) * x ** (power - 2))

    # comparisons act on the real part of the value

    def __lt__(self, other):
        return _real_value(self) < _real_value(other)

    def __le__(self, other):
        return _real_value(self) <= _real_value(other)

    def __gt__(self, other):
        return _real_value(self) > _real_value(other)

    def __ge__(self, other):
        return _real_value(self) >= _real_value(other)

    def __repr__(self) -> str:
        return f"Dual({self.val!r}, grad={self.grad!r})"


Scalar = Union[Dual, Number]


def value(x: Scalar) -> Number:
    """Strip derivative parts."""
    return x.val if isinstance(x, Dual) else x


def _real_value(x: Scalar) -> float:
    v = value(x)
    return v.real if isinstance(v, complex) else v


def _is_complex(v: Number) -> bool:
    return isinstance(v, (complex, np.complexfloating))


def sin(x: Scalar) -> Scalar:
    if isinstance(x, Dual):
        s, c = np.sin(x.val), np.cos(x.val)
        return x._chain(s, c, -s)
    return np.sin(x) if _is_complex(x) else math.sin(x)


def cos(x: Scalar) -> Scalar:
    if isinstance(x, Dual):
        s, c = np.sin(x.val), np.cos(x.val)
        return x._chain(c, -s, -c)
    return np.cos(x) if _is_complex(x) else math.cos(x)


def sqrt(x: Scalar) -> Scalar:
    if isinstance(x, Dual):
        s = np.sqrt(x.val)
        return x._chain(s, 0.5 / s, -0.25 / (s * x.val))
    return np.sqrt(x) if _is_complex(x) else math.sqrt(x)


def exp(x: Scalar) -> Scalar:
    if isinstance(x, Dual):
        e = np.exp(x.val)
        return x._chain(e, e, e)
    return np.exp(x) if _is_complex(x) else math.exp(x)


def log(x: Scalar) -> Scalar:
    if isinstance(x, Dual):
        return x._chain(np.log(x.val), 1.0 / x.val, -1.0 / (x.val * x.val))
    return np.log(x) if _is_complex(x) else math.log(x)


def arccos(x: Scalar) -> Scalar:
    if isinstance(x, Dual):
        one_minus = 1.0 - x.val * x.val
        d1 = -1.0 / math.sqrt(one_minus)
        return x._chain(math.acos(x.val), d1, d1 * x.val / one_minus)
    return math.acos(x)


def arcsin(x: Scalar) -> Scalar:
    if isinstance(x, Dual):
        one_minus = 1.0 - x.val * x.val
        d1 = 1.0 / math.sqrt(one_minus)
        return x._chain(math.asin(x.val), d1, d1 * x.val / one_minus)
    return math.asin(x)


def conjugate(x: Scalar) -> Scalar:
    if isinstance(x, Dual):
        hess = None if x.hess is None else np.conj(x.hess)
        return Dual(np.conj(x.val), np.conj(x.grad), hess)
    return np.conj(x)


def real(x: Scalar) -> Scalar:
    if isinstance(x, Dual):
        hess = None if x.hess is None else np.real(x.hess)
        return Dual(float(np.real(x.val)), np.real(x.grad), hess)
    return float(np.real(x))


def imag(x: Scalar) -> Scalar:
    if isinstance(x, Dual):
        hess = None if x.hess is None else np.imag(x.hess)
        return Dual(float(np.imag(x.val)), np.imag(x.grad), hess)
    return float(np.imag(x))


def gradient(fn: Callable[..., Scalar], point: Sequence[float]) -> np.ndarray:
    """Exact gradient of fn(*point)."""
    out = fn(*Dual.variables(point))
    if isinstance(out, Dual):
        return np.asarray(out.grad)
    return np.zeros(len(point))


def value_and_gradient(fn: Callable[..., Scalar], point: Sequence[float]) -> Tuple[Number, np.ndarray]:
    out = fn(*Dual.variables(point))
    if isinstance(out, Dual):
        return out.val, np.asarray(out.grad)
    return out, np.zeros(len(point))


def hessian(fn: Callable[..., Scalar], point: Sequence[float]) -> Tuple[Number, np.ndarray, np.ndarray]:
    """Value, gradient and Hessian of fn(*point)."""
    n = len(point)
    out = fn(*Dual.variables(point, with_hessian=True))
    if isinstance(out, Dual):
        return out.val, np.asarray(out.grad), np.asarray(out.hess)
    return out, np.zeros(n), np.zeros((n, n))
