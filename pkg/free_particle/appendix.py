# =======================================================================
# free_particle/appendix.py
# =======================================================================
"""
Closed-form posterior mean of a free particle observed along the registered
line y(t) = u t - q, starting from q(0) = 0 with velocity v0:

    q(t) = u t + exp(-kappa t)(q cos kappa t + (q + (v0 - u)/kappa) sin kappa t) - q

Without observation (kappa = 0) the mean drifts freely, q(t) = q0 + v0 t.
"""
import logging
from dataclasses import dataclass

import numpy as np

from .deviation import deviation_solve
from .exceptions import ClosedFormUnavailableError
from .models import ObservedParticle, ObservedPath

logger = logging.getLogger(__name__)


def appendix_q(particle: ObservedParticle, u: float, q: float, t) -> np.ndarray:
    kappa = particle.kappa
    if kappa == 0:
        raise ClosedFormUnavailableError("kappa = 0: use free_drift for the unobserved particle")
    t = np.asarray(t, dtype=float)
    phase = kappa * t
    coefficient = q + (particle.v0 - u) / kappa
    return u * t + np.exp(-phase) * (q * np.cos(phase) + coefficient * np.sin(phase)) - q


def free_drift(particle: ObservedParticle, t) -> np.ndarray:
    return particle.q0 + particle.v0 * np.asarray(t, dtype=float)


def collapse_envelope(particle: ObservedParticle, u: float, q: float, t) -> np.ndarray:
    """Bound on |q(t) - (u t - q)|: exp(-kappa t)(|q| + |q + (v0 - u)/kappa|) sqrt(2)"""
    kappa = particle.kappa
    if kappa == 0:
        raise ClosedFormUnavailableError("no collapse without observation")
    t = np.asarray(t, dtype=float)
    amplitude = abs(q) + abs(q + (particle.v0 - u) / kappa)
    return np.exp(-kappa * t) * amplitude * np.sqrt(2.0)


def relative_error(numeric: np.ndarray, reference: np.ndarray) -> float:
    """max |numeric - reference| / max |reference|"""
    scale = float(np.max(np.abs(reference)))
    difference = float(np.max(np.abs(np.asarray(numeric) - np.asarray(reference))))
    return difference if scale == 0 else difference / scale


@dataclass(frozen=True)
class ConsistencyReport:
    times: np.ndarray
    q_numeric: np.ndarray
    q_closed: np.ndarray
    y: np.ndarray
    z: np.ndarray
    max_relative_error: float


def consistency_check(particle: ObservedParticle, u: float, q: float, t_end: float, dt: float) -> ConsistencyReport:
    """Rebuild q(t) = z(t) + y(t) from the deviation ODE and compare with the closed form"""
    path = ObservedPath.linear(u, q)
    solution = deviation_solve(particle, path, z0=q, dz0=particle.v0 - u, t_end=t_end, dt=dt)
    y = path.y(solution.times)
    q_numeric = solution.z + y
    q_closed = appendix_q(particle, u, q, solution.times)
    error = relative_error(q_numeric, q_closed)
    logger.debug(f"Deviation ODE vs closed form: max relative error {error:.3e}")
    return ConsistencyReport(
        times=solution.times,
        q_numeric=q_numeric,
        q_closed=q_closed,
        y=y,
        z=solution.z,
        max_relative_error=error,
    )
