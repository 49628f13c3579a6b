import logging
from dataclasses import dataclass

import numpy as np

from .exceptions import AccuracyGuardError
from .models import ObservedParticle, ObservedPath

logger = logging.getLogger(__name__)

ACCURACY_LIMIT = 0.1


@dataclass(frozen=True)
class DeviationSolution:
    """z(t) = q(t) - y(t) and its derivative on a uniform grid"""
    times: np.ndarray
    z: np.ndarray
    dz: np.ndarray


def _rhs(kappa: float, g: float, state: np.ndarray) -> np.ndarray:
    z, dz = state
    return np.array([dz, -2.0 * kappa * dz - 2.0 * kappa ** 2 * z - g])


def deviation_solve(
    particle: ObservedParticle,
    path: ObservedPath,
    z0: float,
    dz0: float,
    t_end: float,
    dt: float,
) -> DeviationSolution:
    """RK4 for z'' + 2 kappa z' + 2 kappa^2 z = -g(t)"""
    kappa = particle.kappa
    if dt <= 0:
        raise AccuracyGuardError(f"step must be positive, got dt = {dt}")
    if dt * kappa > ACCURACY_LIMIT:
        raise AccuracyGuardError(f"dt * kappa = {dt * kappa:.3g} exceeds {ACCURACY_LIMIT}")
    n_steps = max(int(round(t_end / dt)), 1)
    times = dt * np.arange(n_steps + 1)
    g_left = path.g(times)
    g_mid = path.g(times[:-1] + 0.5 * dt)

    states = np.empty((n_steps + 1, 2))
    states[0] = (z0, dz0)
    for n in range(n_steps):
        s = states[n]
        k1 = _rhs(kappa, g_left[n], s)
        k2 = _rhs(kappa, g_mid[n], s + 0.5 * dt * k1)
        k3 = _rhs(kappa, g_mid[n], s + 0.5 * dt * k2)
        k4 = _rhs(kappa, g_left[n + 1], s + dt * k3)
        states[n + 1] = s + (dt / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
    return DeviationSolution(times=times, z=states[:, 0], dz=states[:, 1])


def analytic_deviation(particle: ObservedParticle, z0: float, dz0: float, t) -> np.ndarray:
    """
    Free (g = 0) solution exp(-kappa t)(z0 cos kappa t + (z0 + z0'/kappa) sin kappa t);
    ballistic z0 + z0' t when kappa = 0.
    """
    t = np.asarray(t, dtype=float)
    kappa = particle.kappa
    if kappa == 0:
        return z0 + dz0 * t
    phase = kappa * t
    return np.exp(-phase) * (z0 * np.cos(phase) + (z0 + dz0 / kappa) * np.sin(phase))


def zero_crossings(times: np.ndarray, values: np.ndarray) -> np.ndarray:
    """Sign changes of a sampled curve, located by linear interpolation"""
    values = np.asarray(values, dtype=float)
    signs = np.sign(values)
    left = np.flatnonzero(signs[:-1] * signs[1:] < 0)
    t0, t1 = times[left], times[left + 1]
    v0, v1 = values[left], values[left + 1]
    return t0 - v0 * (t1 - t0) / (v1 - v0)
