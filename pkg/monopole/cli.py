"""
Command-line front end.

    python -m monopole verify --config configs/verify.toml --out results/verify

Exit codes: 0 success, 1 verification failure, 2 usage or configuration error.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import Callable, Dict, List, Optional

from monopole import __version__
from monopole.application.experiment_config import ExperimentConfig, load_config
from monopole.application.experiment_service import ExperimentService, RunResult
from monopole.application.verification_service import VerificationService
from monopole.core.config import settings
from monopole.core.exceptions import (
    ConfigError,
    MonopoleError,
    OutOfDomainError,
    ParameterError,
    PeriodConventionError,
    WrongGaugeError,
)
from monopole.core.logging import setup_logging
from monopole.infrastructure.reporting import write_csv, write_json

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

COMMANDS = ('verify', 'simulate', 'closure', 'parity', 'map', 'reduce2d')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='monopole',
        description='Superintegrable monopole systems on a curved background',
    )
    parser.add_argument('--version', action='version', version=f'%(prog)s {__version__}')
    parser.add_argument('command', choices=COMMANDS, help='Experiment to run')
    parser.add_argument('--config', type=Path, default=None, help='TOML experiment file')
    parser.add_argument('--out', type=Path, default=None, help='Output directory')
    parser.add_argument('--seed', type=int, default=None, help='Overrides the seed of the config file')
    parser.add_argument('--quiet', action='store_true', help='Only warnings and errors on the console')
    return parser


def run_verify(config: ExperimentConfig, out_dir: Path) -> RunResult:
    report = VerificationService(config).run()
    result = RunResult(name='verify', passed=report.passed, summary=report.to_dict())
    result.artifacts.append(write_csv(report.to_frame(), out_dir / 'verification.csv'))
    result.artifacts.append(write_json(result.summary, out_dir / 'verification_summary.json'))
    return result


def _service_command(method: str) -> Callable[[ExperimentConfig, Path], RunResult]:
    def run(config: ExperimentConfig, out_dir: Path) -> RunResult:
        return getattr(ExperimentService(config, out_dir), method)()
    return run


HANDLERS: Dict[str, Callable[[ExperimentConfig, Path], RunResult]] = {
    'verify': run_verify,
    'simulate': _service_command('simulate'),
    'closure': _service_command('closure'),
    'parity': _service_command('parity'),
    'map': _service_command('map_points'),
    'reduce2d': _service_command('reduce2d'),
}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK

    setup_logging(quiet=args.quiet)
    out_dir = args.out if args.out is not None else settings.OUTPUT_DIR / args.command

    try:
        config = load_config(args.config, seed=args.seed)
        result = HANDLERS[args.command](config, out_dir)
    except (ConfigError, ParameterError, OutOfDomainError, WrongGaugeError, PeriodConventionError) as exc:
        logger.error(f"{args.command}: {exc}")
        return EXIT_USAGE
    except MonopoleError as exc:
        logger.error(f"{args.command} failed: {exc}")
        return EXIT_FAILED

    status = 'passed' if result.passed else 'FAILED'
    print(f"{args.command} {status}: {len(result.artifacts)} files in {out_dir}")
    return EXIT_OK if result.passed else EXIT_FAILED


if __name__ == '__main__':
    sys.exit(main())
