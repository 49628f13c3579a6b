from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Tuple, Union

import numpy as np
from scipy import linalg

from .exceptions import (
    DimensionMismatchError,
    InvalidDensityError,
    ZeroNormError,
)


@dataclass(frozen=True)
class Tolerance:
    """Tolerances used by every predicate check"""
    abs_tol: float = 1e-10
    rank_tol: float = 1e-8

    def __post_init__(self):
        if self.abs_tol < 0 or self.rank_tol < 0:
            raise ValueError("tolerances must be nonnegative")

    @classmethod
    def from_config(cls, numerics_config) -> 'Tolerance':
        """Create tolerances from NumericsConfig"""
        return cls(abs_tol=numerics_config.abs_tol, rank_tol=numerics_config.rank_tol)


DEFAULT_TOLERANCE = Tolerance()


def _frozen(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class Operator:
    """Dense complex square matrix"""
    data: np.ndarray

    def __post_init__(self):
        matrix = np.array(self.data, dtype=np.complex128)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1] or matrix.shape[0] < 1:
            raise DimensionMismatchError(f"operator must be a nonempty square matrix, got shape {matrix.shape}")
        object.__setattr__(self, "data", _frozen(matrix))

    @property
    def dim(self) -> int:
        return self.data.shape[0]

    @classmethod
    def identity(cls, dim: int) -> 'Operator':
        return cls(np.eye(dim))

    @classmethod
    def zeros(cls, dim: int) -> 'Operator':
        return cls(np.zeros((dim, dim)))

    @classmethod
    def diagonal(cls, values: Iterable[complex]) -> 'Operator':
        return cls(np.diag(np.asarray(list(values), dtype=np.complex128)))

    def dagger(self) -> 'Operator':
        return Operator(self.data.conj().T)

    def trace(self) -> complex:
        return complex(np.trace(self.data))

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.data)))

    def is_hermitian(self, tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
        return float(np.max(np.abs(self.data - self.data.conj().T))) <= tol.abs_tol

    def is_projector(self, tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
        if not self.is_hermitian(tol):
            return False
        return float(np.max(np.abs(self.data @ self.data - self.data))) <= tol.abs_tol

    def allclose(self, other: 'Operator', atol: float = 1e-10) -> bool:
        _check_dims(self.dim, other.dim)
        return bool(np.max(np.abs(self.data - other.data)) <= atol)

    def __matmul__(self, other: Union['Operator', 'StateVector']):
        if isinstance(other, StateVector):
            _check_dims(self.dim, other.dim)
            return StateVector(self.data @ other.amplitudes)
        _check_dims(self.dim, other.dim)
        return Operator(self.data @ other.data)

    def __add__(self, other: 'Operator') -> 'Operator':
        _check_dims(self.dim, other.dim)
        return Operator(self.data + other.data)

    def __sub__(self, other: 'Operator') -> 'Operator':
        _check_dims(self.dim, other.dim)
        return Operator(self.data - other.data)

    def __mul__(self, scalar: complex) -> 'Operator':
        return Operator(self.data * scalar)

    __rmul__ = __mul__

    def __neg__(self) -> 'Operator':
        return Operator(-self.data)


@dataclass(frozen=True, eq=False)
class StateVector:
    """Complex amplitude vector, normalized or not"""
    amplitudes: np.ndarray

    def __post_init__(self):
        vector = np.array(self.amplitudes, dtype=np.complex128)
        if vector.ndim != 1 or vector.size < 1:
            raise DimensionMismatchError(f"state must be a nonempty vector, got shape {vector.shape}")
        object.__setattr__(self, "amplitudes", _frozen(vector))

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    @property
    def norm2(self) -> float:
        return float(np.vdot(self.amplitudes, self.amplitudes).real)

    @classmethod
    def basis(cls, dim: int, index: int) -> 'StateVector':
        vector = np.zeros(dim, dtype=np.complex128)
        vector[index] = 1.0
        return cls(vector)

    def is_normalized(self, tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
        return abs(self.norm2 - 1.0) <= tol.abs_tol

    def normalized(self, tol: Tolerance = DEFAULT_TOLERANCE) -> 'StateVector':
        norm2 = self.norm2
        if norm2 <= tol.abs_tol:
            raise ZeroNormError(f"cannot normalize a vector with norm2 = {norm2:.3e}")
        return StateVector(self.amplitudes / np.sqrt(norm2))

    def inner(self, other: 'StateVector') -> complex:
        _check_dims(self.dim, other.dim)
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def projector(self) -> Operator:
        """Rank-one operator |psi><psi| (unnormalized when psi is)"""
        return Operator(np.outer(self.amplitudes, self.amplitudes.conj()))

    def tensor(self, other: 'StateVector') -> 'StateVector':
        return StateVector(np.kron(self.amplitudes, other.amplitudes))


@dataclass(frozen=True, eq=False)
class DensityOperator:
    """Statistical operator: Hermitian, positive, trace one"""
    op: Operator
    tol: Tolerance = field(default=DEFAULT_TOLERANCE)

    def __post_init__(self):
        if not isinstance(self.op, Operator):
            object.__setattr__(self, "op", Operator(self.op))
        matrix = self.op.data
        if not self.op.is_hermitian(self.tol):
            raise InvalidDensityError("density operator is not Hermitian within tolerance")
        trace = np.trace(matrix)
        if abs(trace - 1.0) > self.tol.abs_tol:
            raise InvalidDensityError(f"density operator trace {trace.real:.12f} differs from 1")
        smallest = float(linalg.eigvalsh(_hermitian_part(matrix))[0])
        if smallest < -self.tol.abs_tol:
            raise InvalidDensityError(f"density operator has negative eigenvalue {smallest:.3e}")

    @property
    def dim(self) -> int:
        return self.op.dim

    @property
    def matrix(self) -> np.ndarray:
        return self.op.data

    @classmethod
    def from_state(cls, psi: StateVector, tol: Tolerance = DEFAULT_TOLERANCE) -> 'DensityOperator':
        return cls(psi.normalized(tol).projector(), tol)

    @classmethod
    def maximally_mixed(cls, dim: int) -> 'DensityOperator':
        return cls(Operator(np.eye(dim) / dim))

    def purity(self) -> float:
        return float(np.trace(self.matrix @ self.matrix).real)

    def eigh(self) -> Tuple[np.ndarray, np.ndarray]:
        return eigh_ordered(self.op, self.tol)


def _hermitian_part(matrix: np.ndarray) -> np.ndarray:
    return 0.5 * (matrix + matrix.conj().T)


def _check_dims(left: int, right: int):
    if left != right:
        raise DimensionMismatchError(f"dimension mismatch: {left} vs {right}")


def eigh_ordered(op: Operator, tol: Tolerance = DEFAULT_TOLERANCE) -> Tuple[np.ndarray, np.ndarray]:
    """
    Eigen-decomposition of the Hermitian part of op in a reproducible form.

    Eigenvalues are sorted in descending order; each eigenvector column is
    rotated so that its first component with modulus above rank_tol is real
    and positive.
    """
    values, vectors = linalg.eigh(_hermitian_part(op.data))
    order = np.argsort(-values, kind="stable")
    values = values[order]
    vectors = vectors[:, order]
    for column in range(vectors.shape[1]):
        significant = np.flatnonzero(np.abs(vectors[:, column]) > tol.rank_tol)
        if significant.size:
            pivot = vectors[significant[0], column]
            vectors[:, column] *= np.conj(pivot) / abs(pivot)
    return values, vectors
