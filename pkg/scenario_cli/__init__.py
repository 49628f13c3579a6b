__version__ = "1.0.0"

from .models import (
    ScenarioConfig,
    RunSettings,
    ScenarioResult,
    InvariantResult,
    VerificationReport,
    Manifest,
    PARAMETER_MODELS,
)
from .service import ScenarioService
from .exceptions import ScenarioError, ScenarioValidationError, ArtifactIOError, UnsupportedScenarioError, InvariantBreachError

__all__ = [
    "ScenarioConfig",
    "RunSettings",
    "ScenarioResult",
    "InvariantResult",
    "VerificationReport",
    "Manifest",
    "PARAMETER_MODELS",
    "ScenarioService",
    "ScenarioError",
    "ScenarioValidationError",
    "ArtifactIOError",
    "UnsupportedScenarioError",
    "InvariantBreachError",
]
