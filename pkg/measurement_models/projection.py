import logging
from enum import Enum

from operator_core import (
    DEFAULT_TOLERANCE,
    DensityOperator,
    NotProjectorError,
    Operator,
    StateVector,
    Tolerance,
    ZeroNormError,
    projector_complement,
)

from .exceptions import ZeroProbabilityError

logger = logging.getLogger(__name__)


class LudersOutcome(str, Enum):
    """Branch selected by a yes/no measurement of F"""
    E_FALSE = "E-false"
    F_TRUE = "F-true"


def project_postulate(rho: DensityOperator, F: Operator, tol: Tolerance = DEFAULT_TOLERANCE) -> DensityOperator:
    """Non-selective measurement of F: rho -> E rho E + F rho F with E = I - F"""
    if not F.is_projector(tol):
        raise NotProjectorError("projection postulate needs an orthoprojector F")
    E = projector_complement(F, tol)
    mixed = E.data @ rho.matrix @ E.data + F.data @ rho.matrix @ F.data
    return DensityOperator(Operator(mixed), tol)


def luders_update(
    psi: StateVector,
    F: Operator,
    outcome: LudersOutcome,
    tol: Tolerance = DEFAULT_TOLERANCE,
) -> StateVector:
    """Selective update psi -> F psi / ||F psi|| (or E psi for the false branch)"""
    if not F.is_projector(tol):
        raise NotProjectorError("Luders update needs an orthoprojector F")
    branch = F if LudersOutcome(outcome) is LudersOutcome.F_TRUE else projector_complement(F, tol)
    projected = branch @ psi
    try:
        return projected.normalized(tol)
    except ZeroNormError:
        raise ZeroProbabilityError(f"branch {LudersOutcome(outcome).value} has zero norm for this state")
