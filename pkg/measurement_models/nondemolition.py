import logging
from typing import Callable

import numpy as np

from operator_core import DEFAULT_TOLERANCE, Operator, StateVector, Tolerance, commutator, tensor
from operator_core.pauli import basis_projector

from .exceptions import MeasurementError
from .models import NondemolitionReport

logger = logging.getLogger(__name__)


def pointer_observable(g: Callable[[int], float]) -> Operator:
    """G = multiplication by g(sigma + tau mod 2) on C^2 (x) C^2"""
    return Operator.diagonal([g((sigma + tau) % 2) for sigma in (0, 1) for tau in (0, 1)])


def nondemolition_check(
    F: Operator,
    g: Callable[[int], float],
    tol: Tolerance = DEFAULT_TOLERANCE,
) -> NondemolitionReport:
    """
    Whether the atom observable F and the cat observable G commute on every
    initial vector psi (x) delta_0, and the reduced pair X0, Y0.

    Testing all product initial vectors is the same as testing the
    restriction [F (x) I, G](I (x) P_delta0) = 0.
    """
    if F.dim != 2:
        raise MeasurementError(f"atom observable must have dim 2, got {F.dim}")
    G = pointer_observable(g)
    lifted = tensor(F, Operator.identity(2))
    restriction = tensor(Operator.identity(2), basis_projector(2, 0))
    defect = float(np.max(np.abs((commutator(lifted, G) @ restriction).data)))

    events = [basis_projector(2, tau) for tau in (0, 1)]
    X0 = sum((E @ F @ E for E in events), Operator.zeros(2))
    Y0 = sum((E * g(tau) for tau, E in enumerate(events)), Operator.zeros(2))
    reduced_defect = commutator(X0, Y0).max_abs()
    logger.debug(f"Nondemolition defect on initial vectors {defect:.3e}, reduced {reduced_defect:.3e}")
    return NondemolitionReport(
        commutes_on_initial=defect <= tol.abs_tol,
        initial_defect=defect,
        reduced_pair=(X0, Y0),
        reduced_commute=reduced_defect <= tol.abs_tol,
        G=G,
    )


def commutes_on_state(F: Operator, G: Operator, psi: StateVector, tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
    """[F (x) I, G] chi0 = 0 for the single initial vector chi0 = psi (x) delta_0"""
    chi0 = psi.tensor(StateVector.basis(2, 0))
    lifted = tensor(F, Operator.identity(2))
    residual = commutator(lifted, G) @ chi0
    return float(np.max(np.abs(residual.amplitudes))) <= tol.abs_tol
