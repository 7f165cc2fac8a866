"""
Tests for Hamilton's equations and the two steppers.
"""

import math

import numpy as np
import pytest
from scipy.integrate import solve_ivp

from monopole.core.entities.phase import PhasePoint
from monopole.core.entities.trajectory import StepStats
from monopole.core.exceptions import DomainExitError, NewtonDivergedError, OutOfDomainError, StepUnderflowError
from monopole.dynamics import integrators
from monopole.dynamics.integrators import (
    AdaptiveStepper,
    MidpointStepper,
    hamilton_rhs,
    propagate,
    step_implicit_midpoint,
    step_rk_adaptive,
)
from monopole.dynamics.simulation import IntegrationOptions, integrate
from monopole.physics import model


class TestHamiltonRhs:

    def test_azimuthal_momentum_is_constant(self, generic_params, sample_points):
        for z in sample_points:
            assert hamilton_rhs(generic_params, z)[5] == 0.0

    def test_velocities(self, generic_params, generic_point):
        z = generic_point
        d = 0.4 + 0.8 * z.r
        cov = z.p_phi - math.cos(z.theta)
        rhs = hamilton_rhs(generic_params, z)
        assert rhs[0] == pytest.approx(z.r * z.p_r / d)
        assert rhs[1] == pytest.approx(z.p_theta / (generic_params.m_squared * z.r * d))
        assert rhs[2] == pytest.approx(cov / (d * z.r * math.sin(z.theta) ** 2))

    def test_forces_are_minus_gradient(self, generic_params, generic_point):
        rhs = hamilton_rhs(generic_params, generic_point)
        grad = model.hamiltonian_gradient(generic_params, generic_point)
        np.testing.assert_allclose(rhs[3:], -grad[:3])

    def test_outside_window(self, generic_params):
        with pytest.raises(OutOfDomainError):
            hamilton_rhs(generic_params, PhasePoint(0.2, 1.0, 0.0, 0.0, 0.0, 0.0))


class TestImplicitMidpoint:

    def test_energy_drift_is_bounded(self, mic_kepler_params, kepler_state):
        options = IntegrationOptions(dt=2e-3, method='midpoint', sample_every=10)
        trajectory = integrate(mic_kepler_params, kepler_state, 4.0, options)
        drift = trajectory.max_drift()
        assert not trajectory.terminated_early
        assert drift['dH'] <= 1e-4
        assert drift['dX1'] <= 1e-12
        assert drift['dX2'] <= 1e-4

    def test_second_order(self, mic_kepler_params, kepler_state):
        """Test halving dt cuts the global error by about four."""
        reference = propagate(mic_kepler_params, kepler_state.as_array(), 1.0, tol=1e-13, dt_max=0.01)
        errors = []
        for dt in (0.02, 0.01):
            trajectory = integrate(mic_kepler_params, kepler_state, 1.0, IntegrationOptions(dt=dt))
            errors.append(np.max(np.abs(trajectory.states[-1] - reference)))
        assert 3.0 <= errors[0] / errors[1] <= 5.0

    def test_time_reversible(self, mic_kepler_params, kepler_state):
        z = kepler_state
        for _ in range(1000):
            z = step_implicit_midpoint(mic_kepler_params, z, 0.01)
        for _ in range(1000):
            z = step_implicit_midpoint(mic_kepler_params, z, -0.01)
        np.testing.assert_allclose(z.as_array(), kepler_state.as_array(), atol=1e-9)

    def test_energy_drift_shrinks_fourfold(self, mic_kepler_params, kepler_state):
        drifts = []
        for dt in (4e-3, 2e-3):
            trajectory = integrate(mic_kepler_params, kepler_state, 4.0, IntegrationOptions(dt=dt))
            drifts.append(trajectory.max_drift()['dH'])
        assert 3.0 <= drifts[0] / drifts[1] <= 5.0

    @pytest.mark.parametrize("m", ["1", "1/2", "2/3", "3/2"])
    def test_conservation_matrix(self, params_factory, m):
        vp = params_factory(m)
        start = PhasePoint(1.4, 1.2, 0.3, 0.3, 0.2, 0.35)
        trajectory = integrate(vp, start, 0.5, IntegrationOptions(dt=1e-3, sample_every=50))
        drift = trajectory.max_drift()
        assert trajectory.event is None
        assert drift['dX1'] <= 1e-12
        for name in ('dH', 'dX2', 'dX'):
            assert drift[name] <= 1e-4

    def test_zero_step(self, generic_params, generic_point):
        assert step_implicit_midpoint(generic_params, generic_point, 0.0) == generic_point

    def test_leaving_window(self, generic_params):
        z = PhasePoint(2.99, math.pi / 2, 0.0, 5.0, 0.0, 0.0)
        with pytest.raises(DomainExitError):
            step_implicit_midpoint(generic_params, z, 0.01)

    def test_newton_iteration_cap(self, generic_params, generic_point, monkeypatch):
        monkeypatch.setattr(integrators, 'MAX_NEWTON_ITERATIONS', 1)
        with pytest.raises(NewtonDivergedError):
            step_implicit_midpoint(generic_params, generic_point, 0.05)

    def test_stepper_records_newton_iterations(self, generic_params, generic_point):
        stats = StepStats()
        MidpointStepper(generic_params).advance(generic_point.as_array(), 0.01, stats)
        assert stats.accepted == 1
        assert 1 <= stats.max_newton_iterations <= 25


class TestAdaptiveStepper:

    def test_single_step(self, generic_params, generic_point):
        result = step_rk_adaptive(generic_params, generic_point, 0.05, tol=1e-10)
        assert 0 < result.dt_used <= 0.05
        assert result.error_estimate <= 1e-10
        assert result.dt_next > 0

    def test_step_underflow(self, generic_params, generic_point):
        with pytest.raises(StepUnderflowError):
            AdaptiveStepper(generic_params, tol=1e-10).attempt(generic_point.as_array(), 1e-13)

    def test_dt_max_caps_step(self, generic_params, generic_point):
        result = AdaptiveStepper(generic_params, tol=1e-6, dt_max=0.01).attempt(generic_point.as_array(), 1.0)
        assert result.dt_used <= 0.01
        assert result.dt_next <= 0.01

    def test_agrees_with_scipy(self, mic_kepler_params, kepler_state):
        vp = mic_kepler_params
        options = IntegrationOptions(dt=0.01, method='rk', rk_tol=1e-11, dt_max=0.05)
        trajectory = integrate(vp, kepler_state, 2.0, options)
        assert trajectory.times[-1] == pytest.approx(2.0, abs=1e-12)

        def rhs(_, y):
            return hamilton_rhs(vp, PhasePoint.from_array(y))

        reference = solve_ivp(rhs, (0.0, 2.0), kepler_state.as_array(), method='DOP853', rtol=1e-12, atol=1e-12)
        np.testing.assert_allclose(trajectory.states[-1], reference.y[:, -1], atol=1e-7)

    def test_agrees_with_midpoint(self, mic_kepler_params, kepler_state):
        rk = integrate(mic_kepler_params, kepler_state, 1.0, IntegrationOptions(dt=0.01, method='rk', rk_tol=1e-8))
        midpoint = integrate(mic_kepler_params, kepler_state, 1.0, IntegrationOptions(dt=1e-3))
        np.testing.assert_allclose(rk.states[-1], midpoint.states[-1], atol=1e-5)

    def test_propagate_backwards(self, generic_params):
        start = np.array([1.4, 1.2, 0.3, 0.3, 0.2, 0.35])
        forward = propagate(generic_params, start, 0.3)
        np.testing.assert_allclose(propagate(generic_params, forward, -0.3), start, atol=1e-9)


@pytest.mark.slow
def test_small_oscillation_matches_adaptive_stepper(mic_kepler_params):
    vp = mic_kepler_params.with_params(beta2=-2.0)
    start = PhasePoint(1.0, math.pi / 2, 0.0, 0.01, 0.0, 0.0)
    midpoint = integrate(vp, start, 10.0, IntegrationOptions(dt=1e-3, sample_every=100))
    rk = integrate(vp, start, 10.0, IntegrationOptions(method='rk', rk_tol=1e-12, sample_every=100))
    np.testing.assert_allclose(midpoint.states[-1], rk.states[-1], atol=1e-6)
