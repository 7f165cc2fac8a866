"""
Verification Service - bracket, parity-branch and independence checks

Samples random phase points for every configured m (and optional random
parameter sets) and tabulates how well the integrals commute with H.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List

import numpy as np
import pandas as pd

from monopole.application.experiment_config import ExperimentConfig
from monopole.core.entities.params import ModelParams, ValidatedParams
from monopole.core.exceptions import NonpositiveSError
from monopole.infrastructure.numerics.sampling import point_generator, sample_phase_point
from monopole.physics import brackets, integrals
from monopole.physics.model import validate_params

logger = logging.getLogger(__name__)

# random parameter sets use a stream index range disjoint from point indices
PARAM_STREAM_OFFSET = 1 << 40


def random_params(base: ModelParams, seed: int, index: int) -> ModelParams:
    """Generic constants with a positive metric factor and ell = 0."""
    rng = point_generator(seed, PARAM_STREAM_OFFSET + index)
    return base.with_overrides(
        alpha1=float(rng.uniform(0.2, 1.5)),
        beta1=float(rng.uniform(0.2, 1.5)),
        alpha2=float(rng.uniform(-1.0, 1.0)),
        beta2=float(rng.uniform(-1.0, 1.0)),
        k=float(rng.uniform(0.5, 1.5)),
        ell=0.0,
        a=float(rng.uniform(-0.3, 0.3)),
        b=float(rng.uniform(-0.3, 0.3)),
        c=float(rng.uniform(-0.3, 0.3)),
    )


@dataclass
class VerificationReport:
    """
    Tabulated verification results.

    Attributes:
        rows: One record per evaluated point
        summary: Per-(m, parameter set) aggregates
        skipped: Points skipped because S <= 0
        passed: All tolerances met
    """

    rows: List[Dict[str, Any]] = field(default_factory=list)
    summary: List[Dict[str, Any]] = field(default_factory=list)
    skipped: int = 0
    passed: bool = True

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(self.rows)

    def to_dict(self) -> Dict[str, Any]:
        return {'summary': self.summary, 'skipped': self.skipped, 'passed': self.passed}


class VerificationService:
    """
    Service for the bracket and independence verification.

    Points are drawn from counter-based streams keyed by (seed, index), so
    the same configuration always checks the same points.
    """

    def __init__(self, config: ExperimentConfig):
        """
        Initialize verification service.

        Args:
            config: Validated experiment configuration
        """
        self.config = config
        self.block = config.verification

    def parameter_sets(self, m: Fraction) -> List[ValidatedParams]:
        base = self.config.params.to_model_params(m=str(m))
        window = self.config.window.to_window()
        sets = [validate_params(base, window)]
        for i in range(self.block.param_sets):
            sets.append(validate_params(random_params(base, self.config.seed, i), window))
        return sets

    def check_point(self, vp: ValidatedParams, index: int) -> Dict[str, Any]:
        """Brackets, off-branch residual and rank at one sampled point."""
        z = sample_phase_point(vp.window, self.config.seed, index)
        h = brackets.hamiltonian_observable(vp)
        x1 = brackets.x1_observable(vp)
        x2 = brackets.x2_observable(vp)
        calx = brackets.calx_observable(vp)

        calx_value = integrals.eval_calX(vp, z)
        row: Dict[str, Any] = {'index': index, **z.to_dict()}
        for name, f, g in (('x1_h', x1, h), ('x2_h', x2, h), ('calx_h', calx, h), ('x1_x2', x1, x2)):
            value, scale = brackets.poisson_bracket_with_scale(f, g, vp, z)
            row[f'bracket_{name}'] = value
            row[f'scale_{name}'] = scale
            row[f'relative_{name}'] = abs(value) / scale if scale > 0 else abs(value)
        row['calx'] = calx_value.value
        row['offbranch_residual'] = calx_value.offbranch_residual
        row['rank'] = brackets.independence_rank(
            vp, z, [h, x1, x2, calx], threshold=self.block.rank_threshold
        )
        return row

    def run(self) -> VerificationReport:
        report = VerificationReport()
        for m in self.config.m_values():
            for set_index, vp in enumerate(self.parameter_sets(m)):
                self._run_set(report, m, set_index, vp)

        logger.info(
            f"Verification {'passed' if report.passed else 'FAILED'}: "
            f"{len(report.rows)} points, {report.skipped} skipped"
        )
        return report

    def _run_set(self, report: VerificationReport, m: Fraction, set_index: int, vp: ValidatedParams) -> None:
        integrals.require_zero_gauge(vp)
        tol = self.block.bracket_tol
        rows = []
        skipped = 0
        for index in range(self.block.n_points):
            try:
                row = self.check_point(vp, index)
            except NonpositiveSError as exc:
                skipped += 1
                logger.debug(f"Skipping point {index} for m={m}: {exc}")
                continue
            row.update({'m': str(m), 'param_set': set_index})
            rows.append(row)

        if skipped:
            logger.warning(f"m={m}, set {set_index}: skipped {skipped} points with S <= 0")
        report.skipped += skipped
        report.rows.extend(rows)

        if not rows:
            logger.warning(f"m={m}, set {set_index}: no point with S > 0 was checked")
            summary = {'m': str(m), 'param_set': set_index, 'points': 0, 'skipped': skipped, 'passed': False}
            report.summary.append(summary)
            report.passed = False
            return

        frame = pd.DataFrame(rows)
        rank_fraction = float(np.mean(frame['rank'] == 4))
        worst = {
            name: float(frame[f'relative_{name}'].max())
            for name in ('x1_h', 'x2_h', 'calx_h', 'x1_x2')
        }
        max_offbranch = float(frame['offbranch_residual'].max())
        passed = (
            all(v <= tol for v in worst.values())
            and max_offbranch <= self.block.offbranch_tol
            and rank_fraction >= self.block.min_rank_fraction
        )
        report.summary.append({
            'm': str(m),
            'param_set': set_index,
            'params': vp.params.to_dict(),
            'points': len(rows),
            'skipped': skipped,
            'max_relative_bracket': worst,
            'max_offbranch_residual': max_offbranch,
            'rank4_fraction': rank_fraction,
            'passed': passed,
        })
        report.passed = report.passed and passed
