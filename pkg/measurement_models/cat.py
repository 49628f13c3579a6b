# =======================================================================
# measurement_models/cat.py
# =======================================================================
import logging
from typing import Dict, Hashable, Mapping

import numpy as np

from operator_core import (
    DEFAULT_TOLERANCE,
    DensityOperator,
    Operator,
    StateVector,
    Tolerance,
    partial_trace_second,
    tensor,
)
from operator_core.pauli import basis_projector

from .exceptions import NotBlockSupportedError, UnnormalizedStateError, ZeroProbabilityError
from .models import CatSystem, DecoherenceResult

logger = logging.getLogger(__name__)


def cat_interact(psi: StateVector, tol: Tolerance = DEFAULT_TOLERANCE) -> StateVector:
    """chi(sigma, tau) = psi(sigma) delta(tau xor sigma): zero unless sigma == tau"""
    if not psi.is_normalized(tol):
        raise UnnormalizedStateError(f"atom state has norm2 {psi.norm2:.12f}")
    system = CatSystem(psi)
    return system.interaction @ system.initial_joint()


def schmidt_weights(chi: StateVector) -> np.ndarray:
    """Squared Schmidt coefficients of a two-qubit vector, descending"""
    singular = np.linalg.svd(chi.amplitudes.reshape(2, 2), compute_uv=False)
    return singular ** 2


def decohere(chi: StateVector, tol: Tolerance = DEFAULT_TOLERANCE) -> DecoherenceResult:
    """
    Replace the entangled vector by the block-diagonal mixture
    sum_tau Pr(tau) P_delta_tau (x) P_delta_tau and its atom marginal.
    """
    if chi.dim != 4:
        raise NotBlockSupportedError(f"cat joint state must have dim 4, got {chi.dim}")
    amplitudes = chi.amplitudes.reshape(2, 2)
    off_block = max(abs(amplitudes[0, 1]), abs(amplitudes[1, 0]))
    if off_block > tol.abs_tol:
        raise NotBlockSupportedError(f"joint state has amplitude {off_block:.3e} where sigma != tau")
    probabilities = np.abs(np.diag(amplitudes)) ** 2
    joint = sum(
        (tensor(basis_projector(2, k), basis_projector(2, k)) * float(p) for k, p in enumerate(probabilities)),
        Operator.zeros(4),
    )
    joint_density = DensityOperator(joint, tol)
    reduced = partial_trace_second(joint_density, (2, 2), tol)
    logger.debug(f"Decohered cat state with pointer probabilities {probabilities}")
    return DecoherenceResult(joint=joint_density, reduced=reduced, probabilities=probabilities)


def cat_conditional_family(joint: DensityOperator) -> Dict[int, Operator]:
    """tau -> Tr_2[(I (x) P_tau) rho (I (x) P_tau)], subnormalized with trace Pr(tau)"""
    family = {}
    for tau in (0, 1):
        selector = tensor(Operator.identity(2), basis_projector(2, tau)).data
        block = selector @ joint.matrix @ selector
        family[tau] = Operator(np.einsum("ijkj->ik", block.reshape(2, 2, 2, 2)))
    return family


def bayes_condition(
    family: Mapping[Hashable, Operator],
    tau: Hashable,
    tol: Tolerance = DEFAULT_TOLERANCE,
) -> DensityOperator:
    """Posterior rho_tau = rho(tau) / Pr(tau)"""
    try:
        block = family[tau]
    except KeyError:
        raise ZeroProbabilityError(f"outcome {tau!r} is not in the family")
    probability = block.trace().real
    if probability <= tol.abs_tol:
        raise ZeroProbabilityError(f"outcome {tau!r} has probability {probability:.3e}; conditioning undefined")
    return DensityOperator(block * (1.0 / probability), tol)
