"""
Tests for the Taub-NUT chart and the planar reduction.
"""

from fractions import Fraction

import numpy as np
import pytest

from monopole.core.entities.phase import PhasePoint, TaubNutPoint
from monopole.core.exceptions import OutOfDomainError, PeriodConventionError, WrongGaugeError
from monopole.physics import model, transforms


class TestTaubNutChart:

    def test_identity_at_unit_scale(self, params_factory, generic_point):
        vp = params_factory("1")
        mapped = transforms.to_taubnut(vp, generic_point)
        np.testing.assert_array_equal(mapped.as_array(), generic_point.as_array())

    @pytest.mark.parametrize("m, delta", [("2/3", -1), ("3/2", 1), ("1/2", -1), ("5/2", 1)])
    def test_round_trip(self, params_factory, sample_points, m, delta):
        vp = params_factory(m, delta=delta)
        for z in sample_points:
            back = transforms.from_taubnut(vp, transforms.to_taubnut(vp, z))
            np.testing.assert_allclose(back.as_array(), z.as_array(), rtol=1e-12, atol=1e-12)

    @pytest.mark.parametrize("m, delta", [("2/3", 1), ("2/3", -1), ("3/2", 1)])
    def test_map_is_symplectic(self, params_factory, sample_points, m, delta):
        vp = params_factory(m, delta=delta)
        for z in sample_points[:5]:
            assert transforms.symplectic_residual(vp, z) <= 1e-8

    @pytest.mark.parametrize("m, delta", [("1", 1), ("2/3", 1), ("2/3", -1), ("5/2", -1)])
    def test_kinetic_terms_agree(self, params_factory, sample_points, m, delta):
        vp = params_factory(m, delta=delta)
        for z in sample_points:
            assert transforms.kinetic_mismatch(vp, z) <= 1e-12

    def test_unit_scale_without_angular_potential(self, params_factory, sample_points):
        vp = params_factory("1", a=0.0, b=0.0, c=0.0)
        for z in sample_points:
            h = model.hamiltonian(vp, z)
            h_taubnut = transforms.taubnut_hamiltonian(vp, transforms.to_taubnut(vp, z))
            assert h_taubnut == pytest.approx(h, rel=1e-12, abs=1e-12)

    @pytest.mark.parametrize("m", ["1", "2/3", "3/2"])
    def test_potential_ratios(self, params_factory, generic_point, m):
        vp = params_factory(m)
        report = transforms.potential_discrepancy(vp, generic_point)
        assert report['radial_ratio'] == pytest.approx(report['expected_radial_ratio'], rel=1e-12)
        assert report['angular_ratio'] == pytest.approx(report['expected_angular_ratio'], rel=1e-12)
        assert report['expected_angular_ratio'] == pytest.approx(1.0 / (2.0 * vp.m_squared))

    def test_strict_period_convention(self, params_factory, generic_point):
        vp = params_factory("2/3", nu=1.0)
        with pytest.raises(PeriodConventionError):
            transforms.to_taubnut(vp, generic_point, strict=True)
        matching = params_factory("2/3", nu=1.5)
        assert transforms.to_taubnut(matching, generic_point, strict=True).R > 0

    def test_period_metadata(self, params_factory):
        vp = params_factory("2/3", nu=1.5)
        periods = transforms.period_metadata(vp)
        assert periods['Phi_period'] == pytest.approx(periods['phi_period'] * 1.5)

    def test_invalid_taubnut_point(self):
        with pytest.raises(OutOfDomainError):
            TaubNutPoint(0.0, 1.0, 0.0, 0.0, 0.0, 0.0)


class TestPlanarReduction:

    def test_pure_monopole(self, params_factory):
        vp = params_factory("1", a=0.0, b=0.0, c=0.0, ell=1.0)
        pw = transforms.reduce_2d(vp, 0.0)
        assert pw.mu == Fraction(1, 2)
        assert pw.alpha_pw == 0
        assert pw.beta_pw == Fraction(1, 2)

    def test_exact_parameters(self, params_factory):
        vp = params_factory("2/3", a=1.0, b=0.0, c=0.0, k=0.5, ell=0.5)
        pw = transforms.reduce_2d(vp, 0.0)
        assert pw.mu == Fraction(3, 4)
        assert pw.alpha_pw == 1
        assert pw.beta_pw == Fraction(1, 8)

    def test_w0_drops_monopole_term(self, params_factory):
        vp = params_factory("1", ell=1.0)
        pw = transforms.reduce_2d(vp, 1.0)
        r = 1.4
        p = vp.params
        expected = model.eval_w1(vp, r) - p.k ** 2 / (2.0 * r * (p.alpha1 + p.beta1 * r))
        assert pw.w0(r) == pytest.approx(expected, rel=1e-14)
        assert pw.to_dict()['W0_profile'].startswith('W0(r)')

    @pytest.mark.parametrize("m", ["1", "1/2", "2/3"])
    @pytest.mark.parametrize("p0", [-2.0, 0.0, 3.0])
    def test_reduced_hamiltonian_matches(self, params_factory, m, p0):
        vp = params_factory(m, ell=1.0)
        z = PhasePoint(1.3, 1.1, 0.4, 0.35, -0.6, p0)
        assert transforms.reduced_hamiltonian_check(vp, z) <= 1e-12

    def test_wrong_gauge(self, params_factory, generic_point):
        with pytest.raises(WrongGaugeError):
            transforms.reduce_2d(params_factory("1"), 0.0)
        with pytest.raises(WrongGaugeError):
            transforms.reduced_hamiltonian_check(params_factory("1"), generic_point)
