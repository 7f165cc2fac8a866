"""
Tests for the integrals of motion and the polynomial integral calX.
"""

import itertools
import math

import mpmath
import numpy as np
import pytest

from monopole.core.entities.integrals import ConservedSet, ParityBranch
from monopole.core.entities.phase import PhasePoint
from monopole.core.exceptions import ComplexDomainError, NonpositiveSError, OutOfDomainError, WrongGaugeError
from monopole.dynamics.integrators import propagate
from monopole.physics import integrals, model

M_VALUES = ["1", "1/2", "2", "2/3", "3/2", "5/3", "5/2"]

# p_r > 0 and p_theta > 0, away from turning points
FORWARD_POINT = PhasePoint(1.4, 1.2, 0.3, 0.8, 0.9, 0.35)


class TestRotationalIntegrals:

    @pytest.mark.parametrize("ell, k, p_phi, expected", [
        (0.0, 1.0, 2.5, 2.5),
        (1.0, 1.0, 0.0, 1.0),
        (2.0, 2.0, -0.5, 1.5),
    ])
    def test_x1(self, params_factory, ell, k, p_phi, expected):
        vp = params_factory(ell=ell, k=k)
        z = PhasePoint(1.0, 0.8, 0.0, 0.3, 0.2, p_phi)
        assert integrals.eval_x1(vp, z) == pytest.approx(expected)

    def test_x2_equator(self, params_factory):
        vp = params_factory("1", a=0.0, b=0.0, c=0.0, k=1.7)
        assert integrals.eval_x2(vp, PhasePoint(1.0, math.pi / 2, 0.0, 0.0, 1.0, 2.0)) == pytest.approx(5.0)
        vp = params_factory("1/2", a=0.0, b=0.0, c=0.0)
        assert integrals.eval_x2(vp, PhasePoint(1.0, math.pi / 2, 0.0, 0.0, 0.0, 2.0)) == pytest.approx(1.0)

    def test_x2_high_precision(self, generic_params, generic_point):
        p = generic_params.params
        m2 = mpmath.mpf(4) / 9
        theta = mpmath.mpf(generic_point.theta)
        cov = mpmath.mpf(generic_point.p_phi) - mpmath.mpf(p.k) * mpmath.cos(theta)
        w2 = (4 * (mpmath.mpf(p.a) * mpmath.cos(theta / 2) ** 2 + mpmath.mpf(p.b) * mpmath.sin(theta / 2) ** 2)
              + mpmath.mpf(p.c)) / mpmath.sin(theta) ** 2
        expected = mpmath.mpf(generic_point.p_theta) ** 2 + m2 * (cov ** 2 / mpmath.sin(theta) ** 2 + 2 * w2)
        assert integrals.eval_x2(generic_params, generic_point) == pytest.approx(float(expected), rel=1e-13)

    def test_x2_near_pole(self, generic_params):
        with pytest.raises(OutOfDomainError):
            integrals.eval_x2(generic_params, PhasePoint(1.0, 0.1, 0.0, 0.0, 0.0, 0.0))

    def test_separated_form_equals_hamiltonian(self, generic_params, sample_points):
        for z in sample_points:
            assert integrals.separated_hamiltonian(generic_params, z) == pytest.approx(
                model.hamiltonian(generic_params, z), rel=1e-13, abs=1e-13
            )


class TestConservedSet:

    def test_mic_kepler_rest_point(self, mic_kepler_params):
        vp = mic_kepler_params.with_params(beta2=0.0)
        cs = integrals.conserved_set(vp, PhasePoint(1.0, math.pi / 2, 0.0, 0.0, 0.0, 0.0))
        assert cs.E0 == pytest.approx(0.5)
        assert cs.E1 == pytest.approx(0.0, abs=1e-15)
        assert cs.S == pytest.approx(1.0)

    def test_s_adds_k2m2(self, params_factory):
        vp = params_factory("1/2", k=2.0, a=0.0, b=0.0, c=0.0)
        cs = integrals.conserved_set(vp, PhasePoint(1.0, math.pi / 2, 0.0, 0.0, 0.0, 0.0))
        assert cs.E1 == pytest.approx(0.0, abs=1e-15)
        assert cs.S == pytest.approx(1.0)

    def test_wrong_gauge(self, params_factory, generic_point):
        with pytest.raises(WrongGaugeError):
            integrals.conserved_set(params_factory(ell=1.0), generic_point)


class TestCalX:

    @pytest.mark.parametrize("m", M_VALUES)
    def test_offbranch_component_vanishes(self, params_factory, sample_points, m):
        vp = params_factory(m)
        for z in sample_points:
            calx = integrals.eval_calX(vp, z)
            assert calx.offbranch_residual <= 1e-10

    def test_offbranch_residual_detects_missing_division(self, params_factory, generic_point, monkeypatch):
        vp = params_factory("2")
        assert integrals.eval_calX(vp, generic_point).offbranch_residual <= 1e-10
        monkeypatch.setattr(integrals, 'divides_by_sqrt_s', lambda m1, m2: False)
        assert integrals.eval_calX(vp, generic_point).offbranch_residual > 1e-3

    @pytest.mark.parametrize("m", M_VALUES)
    def test_branch_and_division(self, params_factory, generic_point, m):
        vp = params_factory(m)
        calx = integrals.eval_calX(vp, generic_point)
        fact = calx.factorization
        assert fact.parity_branch is ParityBranch.for_denominator(vp.m2)
        expected = fact.kept
        if fact.sqrtS_division:
            expected /= math.sqrt(integrals.conserved_set(vp, generic_point).S)
        assert calx.value == pytest.approx(expected, rel=1e-12, abs=1e-12 * abs(fact.P))

    def test_matches_generic_expression(self, params_factory, generic_point):
        vp = params_factory("3/2")
        value = integrals.eval_calX(vp, generic_point).value
        assert float(integrals.calx_expr(vp, *generic_point.as_array())) == pytest.approx(value, rel=1e-12)

    def test_nonpositive_s(self, params_factory):
        vp = params_factory("1", a=-2.0, b=-2.0, c=-1.0)
        z = PhasePoint(1.0, math.pi / 2, 0.0, 0.0, 0.0, 0.0)
        with pytest.raises(NonpositiveSError):
            integrals.eval_calX(vp, z)

    def test_wrong_gauge(self, params_factory, generic_point):
        with pytest.raises(WrongGaugeError):
            integrals.eval_calX(params_factory(ell=0.5), generic_point)

    @pytest.mark.parametrize("m", ["1", "1/2", "2/3"])
    def test_conserved_along_trajectory(self, params_factory, m):
        vp = params_factory(m)
        state = FORWARD_POINT.as_array()
        initial = float(integrals.calx_expr(vp, *state))
        for _ in range(10):
            state = propagate(vp, state, 0.1)
            value = float(integrals.calx_expr(vp, *state))
            assert value == pytest.approx(initial, rel=1e-7, abs=1e-9)

    def test_mic_kepler_polynomial_structure(self, mic_kepler_params):
        """calX is quartic in the momenta; (calX - beta2 k p_phi) / (-S) is quadratic."""
        vp = mic_kepler_params
        rng = np.random.default_rng(5)
        r, theta = 1.2, 1.0
        momenta = rng.uniform(-2.0, 2.0, size=(60, 3))
        values, reduced = [], []
        for p_r, p_theta, p_phi in momenta:
            z = PhasePoint(r, theta, 0.0, p_r, p_theta, p_phi)
            calx = integrals.eval_calX(vp, z).value
            s = integrals.conserved_set(vp, z).S
            values.append(calx)
            reduced.append((calx - vp.params.beta2 * vp.params.k * p_phi) / (-s))

        def design(degree):
            columns = [np.ones(len(momenta))]
            for d in range(1, degree + 1):
                for combo in itertools.combinations_with_replacement(range(3), d):
                    columns.append(np.prod(momenta[:, combo], axis=1))
            return np.column_stack(columns)

        for degree, target in ((4, np.array(values)), (2, np.array(reduced))):
            basis = design(degree)
            coeffs, *_ = np.linalg.lstsq(basis, target, rcond=None)
            residual = np.max(np.abs(basis @ coeffs - target))
            assert residual <= 1e-9 * max(1.0, np.max(np.abs(target)))

        # a quadratic does not fit calX itself
        basis = design(2)
        coeffs, *_ = np.linalg.lstsq(basis, np.array(values), rcond=None)
        assert np.max(np.abs(basis @ coeffs - np.array(values))) > 1e-3


class TestSeparatedObjects:

    @pytest.mark.parametrize("m", ["1", "1/2", "2/3", "3/2"])
    def test_radicands_are_factor_moduli(self, params_factory, sample_points, m):
        vp = params_factory(m)
        for z in sample_points:
            cs = integrals.conserved_set(vp, z)
            mod_r, mod_theta = integrals.factor_moduli(vp, z)
            assert integrals.radial_radicand(vp, cs) == pytest.approx(mod_r, rel=1e-9)
            assert integrals.angular_radicand(vp, cs) == pytest.approx(mod_theta, rel=1e-9)

    def test_t_values_high_precision(self, generic_params):
        z = FORWARD_POINT
        cs = integrals.conserved_set(generic_params, z)
        fact = integrals.complex_factorization(generic_params, z)
        t1 = mpmath.mpf(fact.w_r.imag) / mpmath.sqrt(mpmath.mpf(fact.w_r.real) ** 2 + mpmath.mpf(fact.w_r.imag) ** 2)
        t2 = mpmath.mpf(fact.w_theta.imag) / mpmath.sqrt(
            mpmath.mpf(fact.w_theta.real) ** 2 + mpmath.mpf(fact.w_theta.imag) ** 2
        )
        assert integrals.eval_T1(generic_params, cs, z.r) == pytest.approx(float(t1), rel=1e-10)
        assert integrals.eval_T2(generic_params, cs, z.theta) == pytest.approx(float(t2), rel=1e-10)

    def test_t2_zero_gives_n_zero(self, generic_params):
        cs = integrals.conserved_set(generic_params, FORWARD_POINT)
        p = generic_params.params
        cos_theta = -generic_params.m_squared * (2 * p.a - 2 * p.b - p.k * cs.p0) / cs.S
        theta = math.acos(cos_theta)
        assert integrals.eval_T2(generic_params, cs, theta) == pytest.approx(0.0, abs=1e-14)
        assert integrals.eval_N(generic_params, cs, theta) == pytest.approx(0.0, abs=1e-14)

    def test_negative_radicand(self, params_factory):
        vp = params_factory("1", a=0.0, b=0.0, c=0.0)
        cs = ConservedSet.build(E0=1.0, E1=1.0, p0=3.0, k2m2=vp.k2m2)
        with pytest.raises(ComplexDomainError):
            integrals.eval_T2(vp, cs, 1.0)

    def test_separation_constant_conserved(self, generic_params):
        vp = generic_params
        state = FORWARD_POINT.as_array()
        initial = integrals.separation_constant(vp, FORWARD_POINT)
        for _ in range(5):
            state = propagate(vp, state, 0.02)
            z = PhasePoint.from_array(state)
            assert z.p_r > 0 and z.p_theta > 0
            assert integrals.separation_constant(vp, z) == pytest.approx(initial, abs=1e-6)

    @pytest.mark.parametrize("m", ["1", "1/2", "2/3", "3/2"])
    @pytest.mark.parametrize("signs", [(1, 1), (1, -1), (-1, 1), (-1, -1)])
    def test_calx_is_normalized_i(self, params_factory, m, signs):
        vp = params_factory(m)
        z = PhasePoint(1.4, 1.2, 0.3, signs[0] * 0.8, signs[1] * 0.9, 0.35)
        cs = integrals.conserved_set(vp, z)
        calx = integrals.eval_calX(vp, z).value
        i_value = integrals.eval_I(vp, z)
        norm = integrals.integral_normalization(vp, cs)
        assert abs(calx) == pytest.approx(norm * abs(i_value) / 2.0, rel=1e-8, abs=1e-10)

    def test_i_constant_along_trajectory(self, params_factory):
        vp = params_factory("1")
        state = FORWARD_POINT.as_array()
        initial = abs(integrals.eval_I(vp, FORWARD_POINT))
        for _ in range(3):
            state = propagate(vp, state, 0.02)
            z = PhasePoint.from_array(state)
            assert abs(integrals.eval_I(vp, z)) == pytest.approx(initial, abs=1e-6)

    def test_i_constant_with_opposite_momentum_signs(self, params_factory):
        vp = params_factory("1", alpha1=0.7, beta1=1.1, alpha2=0.3, beta2=-0.2, a=0.1, b=0.05, c=-0.1)
        start = PhasePoint(1.4, 1.2, 0.3, 0.8, -0.9, 0.35)
        initial_i = abs(integrals.eval_I(vp, start))
        initial_constant = integrals.separation_constant(vp, start)
        state = start.as_array()
        for _ in range(6):
            state = propagate(vp, state, 0.05)
            z = PhasePoint.from_array(state)
            assert abs(integrals.eval_I(vp, z)) == pytest.approx(initial_i, rel=1e-7)
            if z.p_r > 0 > z.p_theta:
                assert integrals.separation_constant(vp, z) == pytest.approx(initial_constant, abs=1e-7)
