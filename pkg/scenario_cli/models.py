import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from .exceptions import ScenarioValidationError

ScenarioName = Literal[
    "cat",
    "ito-tables",
    "dephasing-diffusive",
    "dephasing-counting",
    "central-limit",
    "position-collapse",
    "appendix-figure",
]

HALF = 1.0 / math.sqrt(2.0)


class ScenarioParams(BaseModel):
    """Scenario parameters; unknown keys are rejected"""
    model_config = ConfigDict(extra="forbid")


class CatParams(ScenarioParams):
    amp0: float = Field(HALF, description="Amplitude of the intact atom |0>")
    amp1: float = Field(HALF, description="Amplitude of the disintegrated atom |1>")
    frequency_draws: int = Field(100000, ge=100)
    repeat_draws: int = Field(1000, ge=10)
    lattice_trials: int = Field(1000, ge=1)


class DephasingParams(ScenarioParams):
    gamma: float = Field(1.0, gt=0, description="Dephasing rate of L = sqrt(gamma) sigma_z")
    amp0: float = HALF
    amp1: float = HALF


class CountingParams(ScenarioParams):
    nu: float = Field(10.0, gt=0, description="Poisson intensity")
    amp0: float = 1.0
    amp1: float = 0.0
    lossy_collapse: List[float] = Field([1.0, 0.5], min_length=2, max_length=2,
                                        description="Diagonal of the non-unitary C used for the rate law")
    rate_draws: int = Field(100000, ge=100)


class CentralLimitParams(ScenarioParams):
    gamma: float = Field(1.0, gt=0)
    nus: List[float] = Field([1e2, 1e4], min_length=2)
    amp0: float = math.sqrt(0.8)
    amp1: float = math.sqrt(0.2)

    @field_validator("nus")
    @classmethod
    def check_nus(cls, value: List[float]) -> List[float]:
        if any(nu <= 0 for nu in value) or len(set(value)) != len(value):
            raise ValueError("intensities must be positive and distinct")
        return sorted(value)


class PositionParams(ScenarioParams):
    mass: float = Field(1.0, gt=0)
    lam: float = Field(2.0, gt=0)
    n_points: int = 256
    x_min: float = -10.0
    x_max: float = 10.0
    u: float = 0.5
    q: float = 1.0
    v0: float = 5.5
    pairs: int = Field(50, ge=1)
    initial_variance: float = Field(1.0, gt=0, description="Variance of the unsettled packet")


class AppendixParams(ScenarioParams):
    kappa: float = Field(1.0, gt=0)
    u: float = 0.5
    q: float = 1.0
    v0: float = 5.5


PARAMETER_MODELS = {
    "cat": CatParams,
    "ito-tables": ScenarioParams,
    "dephasing-diffusive": DephasingParams,
    "dephasing-counting": CountingParams,
    "central-limit": CentralLimitParams,
    "position-collapse": PositionParams,
    "appendix-figure": AppendixParams,
}


class ScenarioConfig(BaseModel):
    """A scenario request: file values first, command-line flags on top"""
    scenario: ScenarioName
    seed: Optional[int] = Field(None, ge=0, lt=2 ** 64)
    dt: Optional[float] = Field(None, gt=0)
    t_end: Optional[float] = Field(None, gt=0)
    trajectories: Optional[int] = Field(None, ge=1)
    workers: Optional[int] = Field(None, ge=1)
    output: Optional[str] = None
    format: Optional[Literal["csv", "jsonl"]] = None
    params: Dict[str, Any] = Field(default_factory=dict)

    def parameters(self) -> BaseModel:
        model = PARAMETER_MODELS[self.scenario]
        try:
            return model.model_validate(self.params)
        except ValidationError as e:
            raise ScenarioValidationError(f"invalid parameters for '{self.scenario}': {e}")


@dataclass(frozen=True)
class RunSettings:
    """ScenarioConfig with every default resolved"""
    scenario: str
    seed: int
    dt: float
    t_end: float
    trajectories: int
    workers: int
    batch_size: int
    output_dir: str
    fmt: str


@dataclass
class ScenarioResult:
    scenario: str
    columns: List[str]
    rows: List[Tuple]
    summary: Dict[str, Any] = field(default_factory=dict)
    text: Optional[str] = None
    artifacts: List[str] = field(default_factory=list)


@dataclass(frozen=True)
class InvariantResult:
    name: str
    measured: float
    bound: float
    passed: bool
    relation: str = "<="


@dataclass
class VerificationReport:
    scenario: str
    results: List[InvariantResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def check(self, name: str, measured: float, bound: float, relation: str = "<=") -> InvariantResult:
        """Record measured against bound; relation is '<=', '>=' or '=='"""
        measured, bound = float(measured), float(bound)
        if relation == "<=":
            passed = measured <= bound
        elif relation == ">=":
            passed = measured >= bound
        else:
            passed = measured == bound
        result = InvariantResult(name, measured, bound, bool(passed), relation)
        self.results.append(result)
        return result


class Manifest(BaseModel):
    scenario: str
    command: str
    seed: int
    dt: float
    t_end: float
    trajectories: int
    workers: int
    format: str
    parameters: Dict[str, Any]
    versions: Dict[str, str]
    wall_time_s: float
    artifacts: List[str]
