"""
Quantum logic of orthoprojectors: order, complement, meet and join.

Ranges are computed with singular-value thresholding at Tolerance.rank_tol,
so the lattice operations stay well defined for projectors that carry
rounding noise.
"""
import logging
from typing import Optional, Tuple

import numpy as np
from scipy import linalg

from .exceptions import DimensionMismatchError, NotProjectorError
from .models import DEFAULT_TOLERANCE, DensityOperator, Operator, Tolerance, eigh_ordered

logger = logging.getLogger(__name__)


def _require_projectors(*projectors: Operator, tol: Tolerance):
    dims = {P.dim for P in projectors}
    if len(dims) != 1:
        raise DimensionMismatchError(f"projectors have different dimensions: {sorted(dims)}")
    for P in projectors:
        if not P.is_projector(tol):
            raise NotProjectorError("lattice operation requires orthoprojectors")


def _projector_onto_columns(columns: np.ndarray, dim: int) -> Operator:
    if columns.shape[1] == 0:
        return Operator.zeros(dim)
    return Operator(columns @ columns.conj().T)


def projector_complement(E: Operator, tol: Tolerance = DEFAULT_TOLERANCE) -> Operator:
    _require_projectors(E, tol=tol)
    return Operator.identity(E.dim) - E


def projector_leq(E: Operator, F: Operator, tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
    """E <= F in the lattice order, i.e. EF = E"""
    _require_projectors(E, F, tol=tol)
    return float(np.max(np.abs(E.data @ F.data - E.data))) <= tol.abs_tol


def projector_meet(E: Operator, F: Operator, tol: Tolerance = DEFAULT_TOLERANCE) -> Operator:
    """Orthoprojector onto range(E) intersected with range(F)"""
    _require_projectors(E, F, tol=tol)
    identity = np.eye(E.dim)
    stacked = np.vstack([identity - E.data, identity - F.data])
    _, singular, vh = linalg.svd(stacked)
    kernel = vh[singular <= tol.rank_tol].conj().T
    return _projector_onto_columns(kernel, E.dim)


def projector_join(E: Operator, F: Operator, tol: Tolerance = DEFAULT_TOLERANCE) -> Operator:
    """Orthoprojector onto the linear sum range(E) + range(F)"""
    _require_projectors(E, F, tol=tol)
    u, singular, _ = linalg.svd(np.hstack([E.data, F.data]))
    span = u[:, : singular.size][:, singular > tol.rank_tol]
    return _projector_onto_columns(span, E.dim)


def orthomodular_deviation(E: Operator, G: Operator, tol: Tolerance = DEFAULT_TOLERANCE) -> float:
    """
    Deviation of E v (E' ^ G) from G for E <= G.

    Vanishes for every comparable pair, commuting or not.
    """
    if not projector_leq(E, G, tol):
        raise NotProjectorError("orthomodular law needs E <= G")
    recovered = projector_join(E, projector_meet(projector_complement(E, tol), G, tol), tol)
    return float(np.max(np.abs(recovered.data - G.data)))


def modular_deviation(E: Operator, F: Operator, G: Operator, tol: Tolerance = DEFAULT_TOLERANCE) -> float:
    """max |(E v F) ^ G - E v (F ^ G)|"""
    left = projector_meet(projector_join(E, F, tol), G, tol)
    right = projector_join(E, projector_meet(F, G, tol), tol)
    return float(np.max(np.abs(left.data - right.data)))


def distributive_deviation(E: Operator, F: Operator, G: Operator, tol: Tolerance = DEFAULT_TOLERANCE) -> float:
    """max |(E v F) ^ G - (E ^ G) v (F ^ G)|"""
    left = projector_meet(projector_join(E, F, tol), G, tol)
    right = projector_join(projector_meet(E, G, tol), projector_meet(F, G, tol), tol)
    return float(np.max(np.abs(left.data - right.data)))


def random_unitary(rng: np.random.Generator, dim: int) -> np.ndarray:
    """Haar unitary from the QR decomposition of a complex Ginibre matrix"""
    ginibre = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = linalg.qr(ginibre)
    phases = np.diag(r) / np.abs(np.diag(r))
    return q * phases


def random_line(rng: np.random.Generator, dim: int = 2) -> Operator:
    vector = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    vector /= np.linalg.norm(vector)
    return Operator(np.outer(vector, vector.conj()))


def random_commuting_triple(rng: np.random.Generator, dim: int) -> Tuple[Operator, Operator, Operator]:
    """
    Commuting projectors E, F, G diagonal in one random basis with
    E <= I - F <= G.
    """
    basis = random_unitary(rng, dim)
    f_mask = rng.integers(0, 2, dim)
    e_mask = (1 - f_mask) * rng.integers(0, 2, dim)
    g_mask = np.maximum(1 - f_mask, rng.integers(0, 2, dim))

    def build(mask: np.ndarray) -> Operator:
        return Operator(basis @ np.diag(mask.astype(float)) @ basis.conj().T)

    return build(e_mask), build(f_mask), build(g_mask)


def distributivity_witness(
    rng: np.random.Generator,
    trials: int = 100,
    tol: Tolerance = DEFAULT_TOLERANCE,
) -> Optional[Tuple[Operator, Operator, Operator]]:
    """First random triple of dim-2 lines on which distributivity fails"""
    for trial in range(trials):
        E, F, G = random_line(rng), random_line(rng), random_line(rng)
        if distributive_deviation(E, F, G, tol) > 1e-6:
            logger.debug(f"Distributivity failure found after {trial + 1} trials")
            return E, F, G
    return None


def dispersive_event(rho: DensityOperator, tol: Tolerance = DEFAULT_TOLERANCE) -> Tuple[Operator, float]:
    """
    Rank-one event E with 0 < Tr(E rho) < 1.

    Candidates are the projectors onto the basis mutually unbiased to the
    eigenbasis of rho (its discrete Fourier transform), each of which has
    probability 1/dim.
    """
    if rho.dim < 2:
        raise DimensionMismatchError("dispersion needs dimension at least 2")
    _, eigenbasis = eigh_ordered(rho.op, tol)
    dim = rho.dim
    fourier = np.exp(2j * np.pi * np.outer(np.arange(dim), np.arange(dim)) / dim) / np.sqrt(dim)
    complementary = eigenbasis @ fourier
    for column in range(dim):
        vector = complementary[:, column]
        event = Operator(np.outer(vector, vector.conj()))
        probability = float(np.trace(event.data @ rho.matrix).real)
        if tol.abs_tol < probability < 1.0 - tol.abs_tol:
            return event, probability
    raise NotProjectorError("no dispersive event found in the complementary basis")
