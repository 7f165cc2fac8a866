"""
Experiment Service - simulate, closure, parity, map and reduce2d runs

Each run reads its block of the experiment configuration, does the work
through the physics and dynamics layers and writes its artifacts under
an output directory.
"""

import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List

import numpy as np

from monopole.application.experiment_config import ExperimentConfig
from monopole.core.entities.phase import PhasePoint, TaubNutPoint
from monopole.core.exceptions import MonopoleError
from monopole.dynamics.closure import circular_initial_state, closure_analysis
from monopole.dynamics.simulation import IntegrationOptions, integrate, max_relative_drift
from monopole.infrastructure.numerics.sampling import sample_phase_point, sample_phase_points
from monopole.infrastructure.reporting import records_frame, write_csv, write_json
from monopole.physics import parity, transforms
from monopole.visualization import OrbitChart

logger = logging.getLogger(__name__)

# sampled initial states use stream indices above the verification points
TRAJECTORY_STREAM_OFFSET = 1 << 32


@dataclass
class RunResult:
    """
    Outcome of one experiment run.

    Attributes:
        name: Subcommand that produced it
        passed: False when a checked criterion failed
        artifacts: Files written
        summary: JSON-ready summary
    """

    name: str
    passed: bool = True
    artifacts: List[Path] = field(default_factory=list)
    summary: Dict[str, Any] = field(default_factory=dict)


class ExperimentService:
    """
    Service running the configured experiments.
    """

    def __init__(self, config: ExperimentConfig, out_dir: Path):
        """
        Initialize experiment service.

        Args:
            config: Validated experiment configuration
            out_dir: Directory for the artifacts
        """
        self.config = config
        self.out_dir = Path(out_dir)

    def _write(self, result: RunResult, name: str, data: Any) -> None:
        result.artifacts.append(write_json(data, self.out_dir / name))

    # simulate

    def initial_states(self) -> List[PhasePoint]:
        block = self.config.integration
        states = [s.to_phase_point() for s in block.initial_states]
        window = self.config.window.to_window()
        for i in range(block.n_trajectories):
            states.append(sample_phase_point(window, self.config.seed, TRAJECTORY_STREAM_OFFSET + i))
        return states

    def integration_options(self, dt_scale: float = 1.0) -> IntegrationOptions:
        block = self.config.integration
        return IntegrationOptions(
            dt=block.dt * dt_scale,
            method=block.method,
            newton_tol=block.newton_tol,
            rk_tol=block.rk_tol,
            sample_every=block.sample_every,
            dt_max=block.dt_max,
        )

    def simulate(self) -> RunResult:
        """Integrate every configured initial state and write the drift logs."""
        vp = self.config.validated_params()
        block = self.config.integration
        states = self.initial_states()
        if not states:
            raise MonopoleError("No initial states: set integration.initial_states or n_trajectories")

        result = RunResult(name='simulate')
        runs = []
        for i, z0 in enumerate(states):
            trajectory = integrate(vp, z0, block.t_end, self.integration_options())
            result.artifacts.append(write_csv(trajectory.to_frame(), self.out_dir / f"trajectory_{i:03d}.csv"))
            drift = max_relative_drift(trajectory)
            entry = {
                'index': i,
                'initial_state': z0.to_dict(),
                **trajectory.summary(),
                'max_relative_drift': drift,
                'drift_target': block.drift_target,
                'within_drift_target': bool(drift <= block.drift_target),
            }
            if not entry['within_drift_target']:
                logger.info(f"Trajectory {i}: drift {drift:.3g} above target {block.drift_target:.3g}")

            if block.convergence_check and block.method == 'midpoint' and not trajectory.terminated_early:
                entry['convergence'] = self._convergence(vp, z0, drift)

            if block.write_html:
                chart = OrbitChart(trajectory, title=f"m={vp.params.m} trajectory {i}")
                result.artifacts.append(chart.write_html(self.out_dir / f"trajectory_{i:03d}.html"))
            runs.append(entry)

        result.summary = {'params': vp.to_dict(), 'method': block.method, 'trajectories': runs}
        self._write(result, 'simulate_summary.json', result.summary)
        return result

    def _convergence(self, vp, z0: PhasePoint, drift: float) -> Dict[str, float]:
        """Drift ratio between dt and dt/2; second order gives about 4."""
        half = integrate(vp, z0, self.config.integration.t_end, self.integration_options(0.5))
        drift_half = max_relative_drift(half)
        ratio = drift / drift_half if drift_half > 0 else float('nan')
        logger.info(f"Drift ratio dt : dt/2 = {ratio:.3g}")
        return {'drift_dt': drift, 'drift_half_dt': drift_half, 'ratio': ratio}

    # closure

    def closure(self) -> RunResult:
        """Recurrence analysis for every configured case."""
        block = self.config.closure
        if not block.cases:
            raise MonopoleError("No closure cases configured")
        options = IntegrationOptions(
            dt=min(0.01, block.dt_max),
            method='rk',
            rk_tol=block.tol,
            sample_every=1,
            dt_max=block.dt_max,
        )

        result = RunResult(name='closure')
        cases = []
        for case in block.cases:
            vp = self.config.validated_params(**case.overrides)
            z0 = circular_initial_state(vp) if case.circular else case.initial_state.to_phase_point()
            report = closure_analysis(vp, z0, block.t_end, block.eps_close, block.t_guard, options)
            data = {
                'case': case.name,
                'params': vp.params.to_dict(),
                'initial_state': z0.to_dict(),
                **report.to_dict(),
            }
            self._write(result, f"closure_{case.name}.json", data)
            cases.append({'case': case.name, 'm': str(vp.params.m), 'closes': report.closes,
                          'bounded': report.bounded, 'min_recurrence_distance': report.min_recurrence_distance})

        result.summary = {'t_end': block.t_end, 'eps_close': block.eps_close, 'cases': cases}
        self._write(result, 'closure_summary.json', result.summary)
        return result

    # parity

    def parity(self) -> RunResult:
        """Certify the branch selection for all coprime m1, m2 up to max_m1m2."""
        block = self.config.parity
        result = RunResult(name='parity')
        records = []
        for m1 in range(1, block.max_m1m2 + 1):
            for m2 in range(1, block.max_m1m2 + 1):
                if math.gcd(m1, m2) != 1:
                    continue
                records.append(parity.parity_certify(m1, m2).to_dict())
        certified = all(rec['all_integer_S_powers'] for rec in records)
        result.artifacts.append(write_csv(records_frame(records), self.out_dir / 'parity.csv'))

        consistency = self._parity_consistency() if block.consistency_points else []
        worst = max((row['residual'] for row in consistency), default=0.0)
        consistent = worst <= block.consistency_tol

        result.passed = certified and consistent
        result.summary = {
            'pairs': len(records),
            'all_integer_S_powers': certified,
            'odd_S_powers_present': any(rec['odd_S_powers_present'] for rec in records),
            'consistency_points': len(consistency),
            'max_consistency_residual': worst,
            'passed': result.passed,
        }
        if consistency:
            result.artifacts.append(
                write_csv(records_frame(consistency), self.out_dir / 'parity_consistency.csv')
            )
        self._write(result, 'parity_summary.json', result.summary)
        return result

    def _parity_consistency(self) -> List[Dict[str, Any]]:
        block = self.config.parity
        vp = self.config.validated_params()
        rows = []
        for m1 in range(1, block.consistency_max_sum):
            for m2 in range(1, block.consistency_max_sum - m1 + 1):
                if math.gcd(m1, m2) != 1:
                    continue
                for index in range(block.consistency_points):
                    z = sample_phase_point(vp.window, self.config.seed, index)
                    try:
                        residual = parity.numeric_consistency(vp, z, m1, m2)
                    except MonopoleError as exc:
                        logger.debug(f"Skipping consistency point {index} for ({m1}, {m2}): {exc}")
                        continue
                    rows.append({'m1': m1, 'm2': m2, 'index': index, 'residual': residual})
        return rows

    # map

    def map_points(self) -> RunResult:
        """Apply the Taub-NUT chart map to the configured points."""
        block = self.config.map
        vp = self.config.validated_params()
        if block.strict:
            transforms.check_period_convention(vp)

        points = block.points
        if not points:
            points = [z.as_array().tolist() for z in sample_phase_points(vp.window, self.config.seed, 8)]

        rows = []
        for values in points:
            if block.direction == 'to_taubnut':
                z = PhasePoint(*values)
                image = transforms.to_taubnut(vp, z, strict=block.strict)
                row = {**{f'in_{k}': v for k, v in z.to_dict().items()},
                       **{f'out_{k}': v for k, v in image.to_dict().items()}}
                row['symplectic_residual'] = transforms.symplectic_residual(vp, z)
                row['kinetic_mismatch'] = transforms.kinetic_mismatch(vp, z)
                row.update(transforms.potential_discrepancy(vp, z))
            else:
                Z = TaubNutPoint(*values)
                image = transforms.from_taubnut(vp, Z, strict=block.strict)
                row = {**{f'in_{k}': v for k, v in Z.to_dict().items()},
                       **{f'out_{k}': v for k, v in image.to_dict().items()}}
            rows.append(row)

        result = RunResult(name='map')
        result.summary = {
            'direction': block.direction,
            'strict': block.strict,
            'scale_exponent': transforms.scale_exponent(vp),
            **transforms.period_metadata(vp),
            'points': len(rows),
        }
        if block.direction == 'to_taubnut' and rows:
            result.summary['max_symplectic_residual'] = float(np.max([r['symplectic_residual'] for r in rows]))
            result.summary['max_kinetic_mismatch'] = float(np.max([r['kinetic_mismatch'] for r in rows]))
        self._write(result, 'map.json', {**result.summary, 'rows': rows})
        return result

    # reduce2d

    def reduce2d(self) -> RunResult:
        """Planar parameters for each p0, with optional H vs H~ checks."""
        block = self.config.reduce2d
        vp = self.config.validated_params()
        transforms.require_monopole_gauge(vp)

        reductions = [transforms.reduce_2d(vp, p0).to_dict() for p0 in block.p0]
        checks = []
        for index in range(block.check_points):
            z = sample_phase_point(vp.window, self.config.seed, index)
            checks.append({'index': index, 'p_phi': z.p_phi,
                           'residual': transforms.reduced_hamiltonian_check(vp, z)})

        result = RunResult(name='reduce2d')
        result.summary = {
            'params': vp.params.to_dict(),
            'reductions': reductions,
            'checks': checks,
            'max_check_residual': max((c['residual'] for c in checks), default=0.0),
        }
        self._write(result, 'reduce2d.json', result.summary)
        return result
