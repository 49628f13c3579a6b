from .models import ObservedParticle, ObservedPath, second_differences
from .deviation import DeviationSolution, deviation_solve, analytic_deviation, zero_crossings
from .appendix import (
    ConsistencyReport,
    appendix_q,
    free_drift,
    collapse_envelope,
    consistency_check,
    relative_error,
)
from .comparison import DispersionReport, TrackingReport, dispersion_relaxation, grid_tracking
from .exceptions import (
    FreeParticleError,
    InvalidParticleError,
    AccuracyGuardError,
    NonUniformGridError,
    ClosedFormUnavailableError,
    SampledPathError,
)

__version__ = "1.0.0"
__all__ = [
    "ObservedParticle",
    "ObservedPath",
    "second_differences",
    "DeviationSolution",
    "deviation_solve",
    "analytic_deviation",
    "zero_crossings",
    "ConsistencyReport",
    "appendix_q",
    "free_drift",
    "collapse_envelope",
    "consistency_check",
    "relative_error",
    "TrackingReport",
    "grid_tracking",
    "DispersionReport",
    "dispersion_relaxation",
    "FreeParticleError",
    "InvalidParticleError",
    "AccuracyGuardError",
    "NonUniformGridError",
    "ClosedFormUnavailableError",
    "SampledPathError",
]
