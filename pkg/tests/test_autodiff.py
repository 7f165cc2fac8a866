"""
Tests for the dual-number derivatives and the finite-difference helpers.
"""

import math

import numpy as np
import pytest

from monopole.infrastructure.autodiff import dual
from monopole.infrastructure.numerics.finite_difference import (
    central_difference,
    christoffel_symbols,
    fd_gradient,
    fd_jacobian,
    ricci_scalar,
)


def _sample_function(x, y):
    return dual.sin(x) * y ** 3 / (1.0 + x * x) + dual.sqrt(y) * dual.cos(x * y)


def test_gradient_matches_finite_differences():
    point = np.array([0.7, 1.3])
    exact = dual.gradient(_sample_function, point)
    numeric = fd_gradient(lambda p: _sample_function(*p), point, step=1e-6)
    np.testing.assert_allclose(exact, numeric, rtol=1e-8, atol=1e-9)


def test_hessian_matches_finite_differences():
    point = np.array([0.7, 1.3])
    value, grad, hess = dual.hessian(_sample_function, point)
    assert value == pytest.approx(_sample_function(*point))
    numeric = fd_jacobian(lambda p: dual.gradient(_sample_function, p), point, step=1e-6)
    np.testing.assert_allclose(hess, numeric, rtol=1e-6, atol=1e-7)
    np.testing.assert_allclose(hess, hess.T, atol=1e-14)


def test_integer_powers():
    x, = dual.Dual.variables([1.5], with_hessian=True)
    cube = x ** 3
    assert cube.val == pytest.approx(3.375)
    assert cube.grad[0] == pytest.approx(3 * 1.5 ** 2)
    assert cube.hess[0, 0] == pytest.approx(6 * 1.5)
    inverse = x ** -2
    assert inverse.grad[0] == pytest.approx(-2 * 1.5 ** -3)
    assert (x ** 0).val == 1.0
    assert np.all((x ** 0).grad == 0)


def test_complex_values_split_into_parts():
    def fn(x, y):
        w = x + 1j * y
        return dual.imag(w * w)

    grad = dual.gradient(fn, [0.5, 2.0])
    # Im((x + iy)^2) = 2xy
    np.testing.assert_allclose(grad, [4.0, 1.0])


def test_plain_floats_pass_through():
    assert dual.sin(0.5) == math.sin(0.5)
    assert dual.value(2.0) == 2.0
    np.testing.assert_array_equal(dual.gradient(lambda x, y: 3.0, [1.0, 2.0]), [0.0, 0.0])


def test_arccos_derivative():
    x, = dual.Dual.variables([0.3])
    assert dual.arccos(x).grad[0] == pytest.approx(-1.0 / math.sqrt(1 - 0.09))


def test_central_difference():
    assert central_difference(math.exp, 0.0, 1e-5) == pytest.approx(1.0, rel=1e-9)


def _sphere_metric(x):
    return np.diag([1.0, math.sin(x[0]) ** 2])


def test_christoffel_symbols_of_sphere():
    theta = 0.9
    gamma = christoffel_symbols(_sphere_metric, np.array([theta, 0.0]), 1e-5)
    assert gamma[0, 1, 1] == pytest.approx(-math.sin(theta) * math.cos(theta), rel=1e-7)
    assert gamma[1, 0, 1] == pytest.approx(math.cos(theta) / math.sin(theta), rel=1e-7)
    assert gamma[1, 1, 0] == pytest.approx(gamma[1, 0, 1])


def test_ricci_scalar_of_unit_sphere():
    assert ricci_scalar(_sphere_metric, np.array([1.1, 0.0]), 1e-4) == pytest.approx(2.0, rel=1e-5)


def test_ricci_scalar_of_flat_polar_coordinates():
    def polar(x):
        return np.diag([1.0, x[0] ** 2])

    assert abs(ricci_scalar(polar, np.array([1.7, 0.3]), 1e-4)) < 1e-6
