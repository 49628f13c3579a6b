from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Hashable, Tuple

import numpy as np

from operator_core import DensityOperator, Operator, StateVector

from .exceptions import InstrumentNotNormalizedError, MeasurementError


def cat_interaction() -> Operator:
    """
    Permutation unitary U[psi (x) phi](sigma, tau) = psi(sigma) phi(tau xor sigma)
    on C^2 (x) C^2, basis index 2*sigma + tau.
    """
    matrix = np.zeros((4, 4))
    for sigma in (0, 1):
        for tau in (0, 1):
            matrix[2 * sigma + (tau ^ sigma), 2 * sigma + tau] = 1.0
    return Operator(matrix)


@dataclass(frozen=True, eq=False)
class CatSystem:
    """Two-level atom coupled to a two-state pointer (the cat)"""
    atom_state: StateVector
    pointer_dim: int = 2

    def __post_init__(self):
        if self.atom_state.dim != 2:
            raise MeasurementError("the atom is a two-level system")
        if self.pointer_dim != 2:
            raise MeasurementError("the cat pointer is two-dimensional")

    @property
    def interaction(self) -> Operator:
        return cat_interaction()

    def initial_joint(self) -> StateVector:
        """psi (x) delta_0: initially the cat is alive"""
        return self.atom_state.tensor(StateVector.basis(2, 0))

    def is_unitary(self) -> bool:
        U = self.interaction.data
        return bool(np.array_equal(U.conj().T @ U, np.eye(4)))


@dataclass(frozen=True)
class DecoherenceResult:
    """Block-diagonal joint state and the reduced atom state"""
    joint: DensityOperator
    reduced: DensityOperator
    probabilities: np.ndarray


@dataclass(frozen=True, eq=False)
class Instrument:
    """
    Finite family of Kraus operators V(y) with measure weights mu(y).

    Continuous outcome spaces are represented on a sampled grid whose
    weights carry the quadrature rule.
    """
    labels: Tuple[Hashable, ...]
    kraus: Tuple[Operator, ...]
    weights: np.ndarray
    completeness_tol: float = 1e-8
    name: str = "instrument"

    def __post_init__(self):
        labels = tuple(self.labels)
        kraus = tuple(self.kraus)
        weights = np.array(self.weights, dtype=float)
        if not kraus or len(labels) != len(kraus) or weights.shape != (len(kraus),):
            raise MeasurementError("labels, Kraus operators and weights must have equal nonzero length")
        if np.any(weights < 0):
            raise MeasurementError("measure weights must be nonnegative")
        dims = {V.dim for V in kraus}
        if len(dims) != 1:
            raise MeasurementError(f"Kraus operators act on different dimensions: {sorted(dims)}")
        weights.setflags(write=False)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "kraus", kraus)
        object.__setattr__(self, "weights", weights)
        deviation = self.completeness_deviation()
        if deviation > self.completeness_tol:
            raise InstrumentNotNormalizedError(
                f"instrument '{self.name}' is not normalized: max|sum V^+V mu - I| = {deviation:.3e}"
            )

    @property
    def dim(self) -> int:
        return self.kraus[0].dim

    def completeness_deviation(self) -> float:
        total = sum(w * (V.data.conj().T @ V.data) for V, w in zip(self.kraus, self.weights))
        return float(np.max(np.abs(total - np.eye(self.dim))))


@dataclass(frozen=True)
class MeasurementOutcome:
    label: Any
    index: int
    probability: float
    posterior: StateVector


@dataclass(frozen=True)
class NondemolitionReport:
    commutes_on_initial: bool
    initial_defect: float
    reduced_pair: Tuple[Operator, Operator]
    reduced_commute: bool
    G: Operator = field(repr=False)
