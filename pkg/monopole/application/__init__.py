"""
Application layer: experiment configuration and the services behind the CLI.
"""

from .experiment_config import ExperimentConfig, load_config
from .experiment_service import ExperimentService, RunResult
from .verification_service import VerificationReport, VerificationService

__all__ = [
    "ExperimentConfig",
    "load_config",
    "ExperimentService",
    "RunResult",
    "VerificationReport",
    "VerificationService",
]
