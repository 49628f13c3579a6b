"""
JSON text schema for operators and states.

    {"dim": 2, "entries": [[re, im], [re, im], ...]}

Operators list dim*dim pairs in row-major order, states list dim pairs.
"""
from typing import List, Union

import numpy as np
from pydantic import BaseModel, Field, ValidationError, model_validator

from .exceptions import SerializationError
from .models import Operator, StateVector


class ComplexArraySchema(BaseModel):
    """Wire form shared by operators and states"""
    kind: str = Field("operator", description="'operator' or 'state'")
    dim: int = Field(..., gt=0, description="Hilbert space dimension")
    entries: List[List[float]] = Field(..., description="Row-major [re, im] pairs")

    @model_validator(mode="after")
    def check_shape(self) -> 'ComplexArraySchema':
        if self.kind not in ("operator", "state"):
            raise ValueError(f"unknown kind '{self.kind}'")
        expected = self.dim * self.dim if self.kind == "operator" else self.dim
        if len(self.entries) != expected:
            raise ValueError(f"expected {expected} entries for a {self.kind} of dim {self.dim}, got {len(self.entries)}")
        if any(len(pair) != 2 for pair in self.entries):
            raise ValueError("every entry must be an [re, im] pair")
        return self

    def to_array(self) -> np.ndarray:
        pairs = np.asarray(self.entries, dtype=float)
        flat = pairs[:, 0] + 1j * pairs[:, 1]
        return flat.reshape(self.dim, self.dim) if self.kind == "operator" else flat


def to_schema(value: Union[Operator, StateVector]) -> ComplexArraySchema:
    if isinstance(value, Operator):
        flat, kind = value.data.reshape(-1), "operator"
    else:
        flat, kind = value.amplitudes, "state"
    return ComplexArraySchema(
        kind=kind,
        dim=value.dim,
        entries=[[float(z.real), float(z.imag)] for z in flat],
    )


def from_schema(schema: ComplexArraySchema) -> Union[Operator, StateVector]:
    array = schema.to_array()
    return Operator(array) if schema.kind == "operator" else StateVector(array)


def dumps(value: Union[Operator, StateVector]) -> str:
    return to_schema(value).model_dump_json()


def loads(text: str) -> Union[Operator, StateVector]:
    try:
        return from_schema(ComplexArraySchema.model_validate_json(text))
    except ValidationError as e:
        raise SerializationError(f"Invalid operator document: {e}")


def from_payload(payload: Union[dict, list]) -> Union[Operator, StateVector]:
    """Decode an already-parsed JSON value (used inside scenario files)"""
    try:
        return from_schema(ComplexArraySchema.model_validate(payload))
    except ValidationError as e:
        raise SerializationError(f"Invalid operator document: {e}")
