"""
Instruments in the operator text schema, plus outcome labels and weights.

    {"name": "...", "outcomes": [{"label": "+", "weight": 1.0, "kraus": {...}}, ...]}
"""
from typing import List, Union

from pydantic import BaseModel, Field, ValidationError

from operator_core import Operator
from operator_core.serialization import ComplexArraySchema, to_schema

from .exceptions import MeasurementError
from .models import Instrument


class OutcomeSchema(BaseModel):
    label: Union[str, int, float]
    weight: float = Field(..., ge=0.0, description="Measure weight mu(y)")
    kraus: ComplexArraySchema


class InstrumentSchema(BaseModel):
    name: str = "instrument"
    outcomes: List[OutcomeSchema] = Field(..., min_length=1)


def dumps_instrument(inst: Instrument) -> str:
    outcomes = [
        OutcomeSchema(label=label, weight=float(weight), kraus=to_schema(V))
        for label, V, weight in zip(inst.labels, inst.kraus, inst.weights)
    ]
    return InstrumentSchema(name=inst.name, outcomes=outcomes).model_dump_json()


def loads_instrument(text: str) -> Instrument:
    try:
        schema = InstrumentSchema.model_validate_json(text)
    except ValidationError as e:
        raise MeasurementError(f"Invalid instrument document: {e}")
    if any(outcome.kraus.kind != "operator" for outcome in schema.outcomes):
        raise MeasurementError("instrument outcomes must carry operators")
    return Instrument(
        labels=tuple(outcome.label for outcome in schema.outcomes),
        kraus=tuple(Operator(outcome.kraus.to_array()) for outcome in schema.outcomes),
        weights=[outcome.weight for outcome in schema.outcomes],
        name=schema.name,
    )
