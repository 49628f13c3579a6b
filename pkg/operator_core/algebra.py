import logging
from typing import Tuple, Union

import numpy as np
from scipy import linalg

from .exceptions import (
    DimensionMismatchError,
    InvalidDensityError,
    NegativeVarianceError,
    NotHermitianError,
)
from .models import DEFAULT_TOLERANCE, DensityOperator, Operator, Tolerance

logger = logging.getLogger(__name__)


def _as_matrix(rho: Union[DensityOperator, Operator]) -> np.ndarray:
    return rho.matrix if isinstance(rho, DensityOperator) else rho.data


def expectation(A: Operator, rho: DensityOperator) -> complex:
    """Tr(A rho)"""
    if A.dim != rho.dim:
        raise DimensionMismatchError(f"observable dim {A.dim} does not match state dim {rho.dim}")
    return complex(np.trace(A.data @ rho.matrix))


def uncertainty(A: Operator, rho: DensityOperator, tol: Tolerance = DEFAULT_TOLERANCE) -> float:
    """
    Standard deviation (<A^2> - <A>^2)^(1/2) of a Hermitian observable.

    Variances in [-tol, 0] are clamped to zero; anything more negative means
    the inputs are inconsistent.
    """
    if not A.is_hermitian(tol):
        raise NotHermitianError("uncertainty requires a Hermitian observable")
    mean = expectation(A, rho).real
    second = expectation(A @ A, rho).real
    variance = second - mean * mean
    if variance < -tol.abs_tol:
        raise NegativeVarianceError(f"variance {variance:.3e} is negative beyond tolerance")
    return float(np.sqrt(max(variance, 0.0)))


def commutator(A: Operator, B: Operator) -> Operator:
    """[A, B] = AB - BA"""
    if A.dim != B.dim:
        raise DimensionMismatchError(f"commutator of dim {A.dim} and dim {B.dim}")
    return Operator(A.data @ B.data - B.data @ A.data)


def tensor(A: Operator, B: Operator) -> Operator:
    """Kronecker product A (x) B; the pointer is always the second factor"""
    return Operator(np.kron(A.data, B.data))


def partial_trace_second(
    rho_joint: Union[DensityOperator, Operator],
    dims: Tuple[int, int],
    tol: Tolerance = DEFAULT_TOLERANCE,
) -> DensityOperator:
    """Trace out the second tensor factor of a d1*d2 dimensional state"""
    d1, d2 = dims
    matrix = _as_matrix(rho_joint)
    if d1 < 1 or d2 < 1 or matrix.shape[0] != d1 * d2:
        raise DimensionMismatchError(f"state of dim {matrix.shape[0]} does not factor as {d1} x {d2}")
    reduced = np.einsum("ijkj->ik", matrix.reshape(d1, d2, d1, d2))
    return DensityOperator(Operator(reduced), tol)


def entropy(rho: DensityOperator, tol: Tolerance = DEFAULT_TOLERANCE) -> float:
    """Von Neumann entropy in bits, with 0 log 0 = 0"""
    values = linalg.eigvalsh(0.5 * (rho.matrix + rho.matrix.conj().T))
    if values[0] < -tol.abs_tol:
        raise InvalidDensityError(f"eigenvalue {values[0]:.3e} below tolerance in entropy")
    weights = values[values > tol.abs_tol]
    return float(max(-np.sum(weights * np.log2(weights)), 0.0))


def binary_entropy(p: float) -> float:
    """Entropy in bits of the two-point law (p, 1 - p)"""
    weights = np.array([p, 1.0 - p])
    weights = weights[weights > 0]
    return float(-np.sum(weights * np.log2(weights)))


def trace_distance(rho: Union[DensityOperator, Operator], sigma: Union[DensityOperator, Operator]) -> float:
    """Half the trace norm of rho - sigma"""
    left, right = _as_matrix(rho), _as_matrix(sigma)
    if left.shape != right.shape:
        raise DimensionMismatchError(f"trace distance of shapes {left.shape} and {right.shape}")
    difference = left - right
    values = linalg.eigvalsh(0.5 * (difference + difference.conj().T))
    return float(0.5 * np.sum(np.abs(values)))
