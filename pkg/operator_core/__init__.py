from .models import Tolerance, Operator, StateVector, DensityOperator, DEFAULT_TOLERANCE, eigh_ordered
from .algebra import (
    expectation,
    uncertainty,
    commutator,
    tensor,
    partial_trace_second,
    entropy,
    binary_entropy,
    trace_distance,
)
from .lattice import (
    projector_meet,
    projector_join,
    projector_leq,
    projector_complement,
    orthomodular_deviation,
    modular_deviation,
    distributive_deviation,
    distributivity_witness,
    dispersive_event,
)
from .oscillator import truncated_oscillator
from .exceptions import (
    OperatorCoreError,
    DimensionMismatchError,
    NotHermitianError,
    NotProjectorError,
    InvalidDensityError,
    NegativeVarianceError,
    ZeroNormError,
    SerializationError,
)

__version__ = "1.0.0"
__all__ = [
    "Tolerance",
    "Operator",
    "StateVector",
    "DensityOperator",
    "DEFAULT_TOLERANCE",
    "eigh_ordered",
    "expectation",
    "uncertainty",
    "commutator",
    "tensor",
    "partial_trace_second",
    "entropy",
    "binary_entropy",
    "trace_distance",
    "projector_meet",
    "projector_join",
    "projector_leq",
    "projector_complement",
    "orthomodular_deviation",
    "modular_deviation",
    "distributive_deviation",
    "distributivity_witness",
    "dispersive_event",
    "truncated_oscillator",
    "OperatorCoreError",
    "DimensionMismatchError",
    "NotHermitianError",
    "NotProjectorError",
    "InvalidDensityError",
    "NegativeVarianceError",
    "ZeroNormError",
    "SerializationError",
]
