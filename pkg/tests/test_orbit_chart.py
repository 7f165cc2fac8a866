"""
Tests for the plotly orbit charts.
"""

import math

import numpy as np
import pytest

from monopole.core.entities.phase import PhasePoint
from monopole.core.entities.trajectory import DomainEvent, Trajectory
from monopole.visualization import OrbitChart


@pytest.fixture
def trajectory():
    times = np.linspace(0.0, 1.0, 5)
    states = np.zeros((5, 6))
    states[:, 0] = 1.0
    states[:, 1] = math.pi / 2
    states[:, 2] = np.linspace(0.0, math.pi / 2, 5)
    drift = np.zeros((5, 4))
    drift[:, 0] = [0.0, 1e-9, 2e-9, 1e-9, 3e-9]
    drift[:, 3] = np.nan
    return Trajectory(times=times, states=states, drift_log=drift)


def test_cartesian_embedding(trajectory):
    xyz = OrbitChart(trajectory).cartesian()
    np.testing.assert_allclose(xyz[0], [1.0, 0.0, 0.0], atol=1e-15)
    np.testing.assert_allclose(xyz[-1], [0.0, 1.0, 0.0], atol=1e-15)


def test_orbit_figure(trajectory):
    fig = OrbitChart(trajectory, title="circle").create_orbit_figure()
    assert [trace.name for trace in fig.data] == ['orbit', 'start']
    assert fig.layout.title.text == "circle"


def test_domain_exit_marker(trajectory):
    trajectory.event = DomainEvent(time=1.0, reason="r left window", state=PhasePoint(1.0, 1.0, 0.0, 0.0, 0.0, 0.0))
    fig = OrbitChart(trajectory).create_orbit_figure()
    assert fig.data[-1].name == 'domain exit'


def test_drift_figure_skips_unavailable_integrals(trajectory):
    fig = OrbitChart(trajectory).create_drift_figure()
    names = [trace.name for trace in fig.data]
    assert names == ['r', 'theta', 'dH', 'dX1', 'dX2']
    # zeros are masked for the log axis
    assert np.isnan(fig.data[2].y[0])


def test_write_html(tmp_path, trajectory):
    path = OrbitChart(trajectory).write_html(tmp_path / 'charts' / 'orbit.html', include_plotlyjs=False)
    text = path.read_text(encoding='utf-8')
    assert text.startswith('<html>')
    assert 'Orbit - conservation' in text


def test_empty_trajectory():
    empty = Trajectory(times=np.array([]), states=np.zeros((0, 6)), drift_log=np.zeros((0, 4)))
    with pytest.raises(ValueError):
        OrbitChart(empty)
