"""
Experiment Configuration

TOML experiment files validated by pydantic models. Unknown keys are
rejected everywhere so that a mistyped physics constant fails loudly.
"""

import logging

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from monopole.core.config import settings
from monopole.core.entities.params import DomainWindow, ModelParams, RationalM, ValidatedParams
from monopole.core.entities.phase import PhasePoint
from monopole.core.exceptions import ConfigError
from monopole.physics.model import validate_params

logger = logging.getLogger(__name__)

DEFAULT_M_LIST = ["1", "1/2", "2", "2/3", "3/2", "5/3", "5/2"]


class _Block(BaseModel):
    model_config = ConfigDict(extra="forbid")


class ParamsBlock(_Block):
    m: str = "1"
    delta: int = 1
    nu: float = 1.0
    alpha1: float = 0.0
    beta1: float = 1.0
    alpha2: float = 0.0
    beta2: float = 0.0
    k: float = 1.0
    ell: float = 0.0
    a: float = 0.0
    b: float = 0.0
    c: float = 0.0

    @field_validator("m", mode="before")
    @classmethod
    def _m_exact(cls, value):
        if isinstance(value, float):
            raise ValueError("m must be an integer or a fraction string such as '2/3'")
        RationalM.parse(str(value))
        return str(value)

    def to_model_params(self, **overrides) -> ModelParams:
        data = self.model_dump()
        data.update(overrides)
        data["m"] = RationalM.parse(str(data["m"]))
        return ModelParams(**data)


class WindowBlock(_Block):
    r_min: float = 0.5
    r_max: float = 3.0
    theta_margin: float = 0.3

    def to_window(self) -> DomainWindow:
        return DomainWindow(self.r_min, self.r_max, self.theta_margin)


class StateBlock(_Block):
    r: float
    theta: float
    phi: float = 0.0
    p_r: float = 0.0
    p_theta: float = 0.0
    p_phi: float = 0.0

    def to_phase_point(self) -> PhasePoint:
        return PhasePoint(self.r, self.theta, self.phi, self.p_r, self.p_theta, self.p_phi)


class VerificationBlock(_Block):
    n_points: int = Field(default=200, ge=1)
    m_list: List[str] = Field(default_factory=lambda: list(DEFAULT_M_LIST))
    param_sets: int = Field(default=0, ge=0)
    bracket_tol: float = Field(default=1e-8, gt=0)
    offbranch_tol: float = Field(default=1e-10, gt=0)
    min_rank_fraction: float = Field(default=0.95, ge=0, le=1)
    rank_threshold: float = Field(default=1e-8, gt=0)

    @field_validator("m_list", mode="before")
    @classmethod
    def _m_list_exact(cls, values):
        result = []
        for value in values:
            if isinstance(value, float):
                raise ValueError("m_list entries must be integers or fraction strings")
            RationalM.parse(str(value))
            result.append(str(value))
        return result


class IntegrationBlock(_Block):
    dt: float = Field(default=1e-3, gt=0)
    t_end: float = Field(default=10.0, gt=0)
    method: Literal["midpoint", "rk"] = "midpoint"
    newton_tol: float = Field(default=1e-13, gt=0)
    rk_tol: float = Field(default=1e-10, gt=0)
    sample_every: int = Field(default=10, ge=1)
    dt_max: float = Field(default=0.05, gt=0)
    drift_target: float = Field(default=1e-8, gt=0)
    initial_states: List[StateBlock] = Field(default_factory=list)
    n_trajectories: int = Field(default=0, ge=0)
    convergence_check: bool = False
    write_html: bool = False


class ClosureCase(_Block):
    name: str
    initial_state: Optional[StateBlock] = None
    circular: bool = False
    overrides: Dict[str, Union[int, float, str]] = Field(default_factory=dict)

    @model_validator(mode="after")
    def _one_source(self):
        if self.circular == (self.initial_state is not None):
            raise ValueError(f"case {self.name!r}: give exactly one of initial_state or circular = true")
        unknown = set(self.overrides) - set(ParamsBlock.model_fields)
        if unknown:
            raise ValueError(f"case {self.name!r}: unknown parameter overrides {sorted(unknown)}")
        return self


class ClosureBlock(_Block):
    t_end: float = Field(default=200.0, gt=0)
    eps_close: float = Field(default=1e-3, gt=0)
    t_guard: Optional[float] = Field(default=None, ge=0)
    dt_max: float = Field(default=0.02, gt=0)
    tol: float = Field(default=1e-11, gt=0)
    cases: List[ClosureCase] = Field(default_factory=list)


class ParityBlock(_Block):
    max_m1m2: int = Field(default=9, ge=1)
    consistency_points: int = Field(default=0, ge=0)
    consistency_max_sum: int = Field(default=8, ge=2)
    consistency_tol: float = Field(default=1e-9, gt=0)


class MapBlock(_Block):
    direction: Literal["to_taubnut", "from_taubnut"] = "to_taubnut"
    strict: bool = False
    points: List[List[float]] = Field(default_factory=list)

    @field_validator("points")
    @classmethod
    def _six_components(cls, points):
        for point in points:
            if len(point) != 6:
                raise ValueError(f"each point needs 6 components, got {len(point)}")
        return points


class Reduce2DBlock(_Block):
    p0: List[float] = Field(default_factory=lambda: [0.0])
    check_points: int = Field(default=0, ge=0)


class ExperimentConfig(_Block):
    """Validated experiment description."""

    seed: int = Field(default_factory=lambda: settings.DEFAULT_SEED, ge=0, lt=2 ** 64)
    params: ParamsBlock = Field(default_factory=ParamsBlock)
    window: WindowBlock = Field(default_factory=WindowBlock)
    verification: VerificationBlock = Field(default_factory=VerificationBlock)
    integration: IntegrationBlock = Field(default_factory=IntegrationBlock)
    closure: ClosureBlock = Field(default_factory=ClosureBlock)
    parity: ParityBlock = Field(default_factory=ParityBlock)
    map: MapBlock = Field(default_factory=MapBlock)
    reduce2d: Reduce2DBlock = Field(default_factory=Reduce2DBlock)

    @model_validator(mode="after")
    def _physics_consistent(self):
        window = self.window.to_window()
        validate_params(self.params.to_model_params(), window)
        for case in self.closure.cases:
            validate_params(self.params.to_model_params(**case.overrides), window)
        return self

    def validated_params(self, **overrides) -> ValidatedParams:
        return validate_params(self.params.to_model_params(**overrides), self.window.to_window())

    def m_values(self) -> List[Fraction]:
        return [RationalM.parse(m).fraction for m in self.verification.m_list]


def load_config(path: Optional[Path] = None, seed: Optional[int] = None) -> ExperimentConfig:
    """
    Read and validate a TOML experiment file.

    Args:
        path: File to read; None gives the defaults
        seed: Overrides the file's seed

    Raises:
        ConfigError: unreadable file, TOML syntax error or schema violation
    """
    data: dict = {}
    if path is not None:
        path = Path(path)
        try:
            with path.open("rb") as handle:
                data = tomllib.load(handle)
        except FileNotFoundError as exc:
            raise ConfigError(f"Config file not found: {path}") from exc
        except tomllib.TOMLDecodeError as exc:
            raise ConfigError(f"Malformed TOML in {path}: {exc}") from exc
    if seed is not None:
        data["seed"] = seed

    try:
        config = ExperimentConfig.model_validate(data)
    except ValidationError as exc:
        raise ConfigError(f"Invalid configuration{f' in {path}' if path else ''}:\n{exc}") from exc
    logger.debug(f"Loaded configuration seed={config.seed} params={config.params.model_dump()}")
    return config
