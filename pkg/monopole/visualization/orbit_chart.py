"""
Orbit and Drift Charts

Plotly figures for integrated trajectories: the orbit in Cartesian
embedding coordinates and the conservation drift of the integrals.
"""

import logging
from pathlib import Path
from typing import Optional

import numpy as np
import plotly.graph_objects as go
from plotly.subplots import make_subplots

from monopole.core.entities.trajectory import DRIFT_FIELDS, Trajectory

logger = logging.getLogger(__name__)


class OrbitChart:
    """
    Orbit and drift figures for one trajectory.

    Features:
    - 3D orbit with start point and domain-exit marker
    - Radial and polar coordinates against time
    - log-scale |drift| of H, X1, X2 and calX
    """

    DRIFT_COLORS = {
        'dH': 'rgb(31, 119, 180)',
        'dX1': 'rgb(44, 160, 44)',
        'dX2': 'rgb(255, 127, 14)',
        'dX': 'rgb(214, 39, 40)',
    }

    def __init__(self, trajectory: Trajectory, title: str = "Orbit"):
        if len(trajectory) == 0:
            raise ValueError("Trajectory has no samples")
        self.trajectory = trajectory
        self.title = title

    def cartesian(self) -> np.ndarray:
        """(x, y, z) of the sampled states."""
        r, theta, phi = (self.trajectory.states[:, i] for i in range(3))
        return np.column_stack([
            r * np.sin(theta) * np.cos(phi),
            r * np.sin(theta) * np.sin(phi),
            r * np.cos(theta),
        ])

    def create_orbit_figure(self) -> go.Figure:
        xyz = self.cartesian()
        fig = go.Figure()
        fig.add_trace(go.Scatter3d(
            x=xyz[:, 0], y=xyz[:, 1], z=xyz[:, 2],
            mode='lines', name='orbit',
            line=dict(width=2, color='rgb(31, 119, 180)'),
        ))
        fig.add_trace(go.Scatter3d(
            x=[xyz[0, 0]], y=[xyz[0, 1]], z=[xyz[0, 2]],
            mode='markers', name='start', marker=dict(size=5, color='green'),
        ))
        if self.trajectory.event is not None:
            fig.add_trace(go.Scatter3d(
                x=[xyz[-1, 0]], y=[xyz[-1, 1]], z=[xyz[-1, 2]],
                mode='markers', name='domain exit', marker=dict(size=5, color='red'),
            ))
        fig.update_layout(title=self.title, scene=dict(aspectmode='data'))
        return fig

    def create_drift_figure(self) -> go.Figure:
        t = self.trajectory.times
        fig = make_subplots(
            rows=2, cols=1,
            shared_xaxes=True,
            vertical_spacing=0.05,
            row_heights=[0.5, 0.5],
            subplot_titles=('Coordinates', '|relative drift|'),
        )
        fig.add_trace(go.Scatter(x=t, y=self.trajectory.states[:, 0], name='r'), row=1, col=1)
        fig.add_trace(go.Scatter(x=t, y=self.trajectory.states[:, 1], name='theta'), row=1, col=1)

        for i, name in enumerate(DRIFT_FIELDS):
            column = np.abs(self.trajectory.drift_log[:, i])
            if np.all(np.isnan(column)):
                continue
            # zeros cannot be drawn on a log axis
            column = np.where(column > 0, column, np.nan)
            fig.add_trace(
                go.Scatter(x=t, y=column, name=name, line=dict(color=self.DRIFT_COLORS[name])),
                row=2, col=1,
            )
        fig.update_yaxes(type='log', row=2, col=1)
        fig.update_layout(title=f"{self.title} - conservation")
        return fig

    def write_html(self, path: Path, include_plotlyjs: Optional[str] = 'cdn') -> Path:
        """Orbit and drift figures in one HTML file."""
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        orbit_html = self.create_orbit_figure().to_html(full_html=False, include_plotlyjs=include_plotlyjs)
        drift_html = self.create_drift_figure().to_html(full_html=False, include_plotlyjs=False)
        path.write_text(
            f"<html><head><meta charset='utf-8'><title>{self.title}</title></head>"
            f"<body>{orbit_html}{drift_html}</body></html>\n",
            encoding='utf-8',
        )
        logger.info(f"Wrote orbit chart {path}")
        return path
