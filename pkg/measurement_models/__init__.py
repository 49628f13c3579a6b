from .models import CatSystem, DecoherenceResult, Instrument, MeasurementOutcome, NondemolitionReport, cat_interaction
from .cat import cat_interact, decohere, cat_conditional_family, bayes_condition, schmidt_weights
from .projection import LudersOutcome, project_postulate, luders_update
from .instrument import (
    projective_instrument,
    computational_instrument,
    identity_instrument,
    unsharp_sigma_x_instrument,
    gaussian_pointer_instrument,
    outcome_weights,
    outcome_distribution,
    instrument_apply,
    sample_outcomes,
    decohered_density,
)
from .nondemolition import nondemolition_check, pointer_observable, commutes_on_state
from .serialization import dumps_instrument, loads_instrument
from .exceptions import (
    MeasurementError,
    UnnormalizedStateError,
    NotBlockSupportedError,
    ZeroProbabilityError,
    InstrumentNotNormalizedError,
)

__version__ = "1.0.0"
__all__ = [
    "CatSystem",
    "DecoherenceResult",
    "Instrument",
    "MeasurementOutcome",
    "NondemolitionReport",
    "cat_interaction",
    "cat_interact",
    "decohere",
    "cat_conditional_family",
    "bayes_condition",
    "schmidt_weights",
    "LudersOutcome",
    "project_postulate",
    "luders_update",
    "projective_instrument",
    "computational_instrument",
    "identity_instrument",
    "unsharp_sigma_x_instrument",
    "gaussian_pointer_instrument",
    "outcome_weights",
    "outcome_distribution",
    "instrument_apply",
    "sample_outcomes",
    "decohered_density",
    "nondemolition_check",
    "pointer_observable",
    "commutes_on_state",
    "dumps_instrument",
    "loads_instrument",
    "MeasurementError",
    "UnnormalizedStateError",
    "NotBlockSupportedError",
    "ZeroProbabilityError",
    "InstrumentNotNormalizedError",
]
