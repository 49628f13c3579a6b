# =======================================================================
# measurement_models/instrument.py
# =======================================================================
"""
Generalized reductions psi -> V(y) psi / ||V(y) psi||.

An instrument is a family of Kraus operators over a finite label set or a
sampled real grid; the outcome y is drawn with weight ||V(y) psi||^2 mu(y).
"""
import logging
from typing import Dict, Hashable, Optional, Sequence

import numpy as np

from operator_core import (
    DEFAULT_TOLERANCE,
    DensityOperator,
    Operator,
    StateVector,
    Tolerance,
    eigh_ordered,
)
from operator_core.pauli import IDENTITY_2, SIGMA_X, basis_projector

from .exceptions import MeasurementError, UnnormalizedStateError, ZeroProbabilityError
from .models import Instrument, MeasurementOutcome

logger = logging.getLogger(__name__)

UNSHARP_NORMALIZATION = np.sqrt(2.5)


def projective_instrument(
    projectors: Sequence[Operator],
    labels: Optional[Sequence[Hashable]] = None,
    name: str = "projective",
) -> Instrument:
    """V(tau) = E(tau) with counting measure"""
    labels = list(range(len(projectors))) if labels is None else list(labels)
    return Instrument(tuple(labels), tuple(projectors), np.ones(len(projectors)), name=name)


def computational_instrument(dim: int = 2) -> Instrument:
    return projective_instrument([basis_projector(dim, k) for k in range(dim)], name="computational")


def identity_instrument(dim: int) -> Instrument:
    return Instrument(("id",), (Operator.identity(dim),), np.ones(1), name="identity")


def unsharp_sigma_x_instrument() -> Instrument:
    """V(+-) = (I +- sigma_x / 2) / sqrt(2.5)"""
    plus = (IDENTITY_2 + SIGMA_X * 0.5) * (1.0 / UNSHARP_NORMALIZATION)
    minus = (IDENTITY_2 - SIGMA_X * 0.5) * (1.0 / UNSHARP_NORMALIZATION)
    return Instrument(("+", "-"), (plus, minus), np.ones(2), name="unsharp-sigma-x")


def gaussian_pointer_instrument(
    A: Operator,
    sigma: float,
    grid: Optional[np.ndarray] = None,
    tol: Tolerance = DEFAULT_TOLERANCE,
) -> Instrument:
    """
    Continuous readout y = A + sigma * noise on a sampled grid.

    V(y) = (2 pi sigma^2)^(-1/4) exp(-(y - A)^2 / (4 sigma^2)), so that
    V(y)^dagger V(y) is the Gaussian density centred at A. The measure
    weights are the trapezoid rule on the grid.
    """
    if sigma <= 0:
        raise MeasurementError("pointer width must be positive")
    if not A.is_hermitian(tol):
        raise MeasurementError("pointer observable must be Hermitian")
    values, vectors = eigh_ordered(A, tol)
    if grid is None:
        grid = np.linspace(values.min() - 10.0 * sigma, values.max() + 10.0 * sigma, 801)
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 1 or grid.size < 2 or np.any(np.diff(grid) <= 0):
        raise MeasurementError("pointer grid must be strictly increasing with at least two points")
    spacing = np.diff(grid)
    weights = np.zeros_like(grid)
    weights[:-1] += 0.5 * spacing
    weights[1:] += 0.5 * spacing

    prefactor = (2.0 * np.pi * sigma ** 2) ** -0.25
    kraus = []
    for y in grid:
        envelope = prefactor * np.exp(-((y - values) ** 2) / (4.0 * sigma ** 2))
        kraus.append(Operator((vectors * envelope) @ vectors.conj().T))
    return Instrument(tuple(float(y) for y in grid), tuple(kraus), weights, name="gaussian-pointer")


def _require_normalized(psi: StateVector, inst: Instrument, tol: Tolerance):
    if psi.dim != inst.dim:
        raise MeasurementError(f"state dim {psi.dim} does not match instrument dim {inst.dim}")
    if not psi.is_normalized(tol):
        raise UnnormalizedStateError(f"state has norm2 {psi.norm2:.12f}")


def outcome_weights(inst: Instrument, psi: StateVector, tol: Tolerance = DEFAULT_TOLERANCE) -> np.ndarray:
    """f(y) mu(y) = ||V(y) psi||^2 mu(y) for every grid point"""
    _require_normalized(psi, inst, tol)
    amplitudes = np.stack([V.data @ psi.amplitudes for V in inst.kraus])
    return np.sum(np.abs(amplitudes) ** 2, axis=1) * inst.weights


def outcome_distribution(inst: Instrument, psi: StateVector, tol: Tolerance = DEFAULT_TOLERANCE) -> Dict[Hashable, float]:
    return dict(zip(inst.labels, outcome_weights(inst, psi, tol).tolist()))


def _posterior(inst: Instrument, index: int, psi: StateVector, tol: Tolerance) -> StateVector:
    return (inst.kraus[index] @ psi).normalized(tol)


def instrument_apply(
    inst: Instrument,
    psi: StateVector,
    draw: float,
    tol: Tolerance = DEFAULT_TOLERANCE,
) -> MeasurementOutcome:
    """Sample the outcome from a uniform draw in [0, 1) by inverting the cumulative weights"""
    if not 0.0 <= draw < 1.0:
        raise MeasurementError(f"uniform draw {draw} outside [0, 1)")
    weights = outcome_weights(inst, psi, tol)
    total = float(weights.sum())
    if total <= tol.abs_tol:
        raise ZeroProbabilityError("all outcome weights vanish")
    cumulative = np.cumsum(weights) / total
    index = int(min(np.searchsorted(cumulative, draw, side="right"), len(weights) - 1))
    # skip zero-weight labels left behind by rounding at the cumulative edge
    while weights[index] <= 0.0:
        index -= 1
    return MeasurementOutcome(
        label=inst.labels[index],
        index=index,
        probability=float(weights[index]),
        posterior=_posterior(inst, index, psi, tol),
    )


def sample_outcomes(
    inst: Instrument,
    psi: StateVector,
    rng: np.random.Generator,
    draws: int,
    tol: Tolerance = DEFAULT_TOLERANCE,
) -> np.ndarray:
    """Outcome indices for `draws` independent measurements of the same state"""
    weights = outcome_weights(inst, psi, tol)
    total = float(weights.sum())
    if total <= tol.abs_tol:
        raise ZeroProbabilityError("all outcome weights vanish")
    cumulative = np.cumsum(weights) / total
    indices = np.searchsorted(cumulative, rng.random(draws), side="right")
    return np.minimum(indices, len(weights) - 1)


def decohered_density(inst: Instrument, psi: StateVector, tol: Tolerance = DEFAULT_TOLERANCE) -> DensityOperator:
    """rho = sum_y f(y) mu(y) P_posterior(y), equivalently sum_y mu(y) V(y) P_psi V(y)^dagger"""
    _require_normalized(psi, inst, tol)
    mixture = np.zeros((inst.dim, inst.dim), dtype=np.complex128)
    for V, weight in zip(inst.kraus, inst.weights):
        branch = V.data @ psi.amplitudes
        mixture += weight * np.outer(branch, branch.conj())
    return DensityOperator(Operator(mixture), tol)
