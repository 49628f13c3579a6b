import logging

import numpy as np
from scipy import linalg

from operator_core import DensityOperator

from .exceptions import PositivityViolationError
from .integrator import stability_guard
from .models import DensityTrajectory, FilterSystem, IntegratorConfig

logger = logging.getLogger(__name__)

POSITIVITY_TOL = 1e-8
TRACE_WARNING = 1e-8


def _master_rhs(K: np.ndarray, L: np.ndarray, rho: np.ndarray) -> np.ndarray:
    """d rho / dt = -K rho - rho K^dagger + L rho L^dagger"""
    return -K @ rho - rho @ K.conj().T + L @ rho @ L.conj().T


def master_equation_evolve(
    system: FilterSystem,
    rho0: DensityOperator,
    dt: float,
    t_end: float,
    record_every: int = 1,
) -> DensityTrajectory:
    """Classical RK4 for the master equation with positivity monitoring"""
    cfg = IntegratorConfig(dt=dt, t_end=t_end, record_every=record_every)
    stability_guard(dt * system.generator_norm(), cfg, "dt * ||K||")
    K, L = system.K.data, system.L.data
    rho = np.array(rho0.matrix, dtype=np.complex128)
    record_steps = set(cfg.record_steps().tolist())

    times, densities, minima = [0.0], [rho.copy()], [float(linalg.eigvalsh(rho)[0])]
    for step in range(cfg.n_steps):
        k1 = _master_rhs(K, L, rho)
        k2 = _master_rhs(K, L, rho + 0.5 * dt * k1)
        k3 = _master_rhs(K, L, rho + 0.5 * dt * k2)
        k4 = _master_rhs(K, L, rho + dt * k3)
        rho = rho + (dt / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
        if step + 1 not in record_steps:
            continue
        smallest = float(linalg.eigvalsh(0.5 * (rho + rho.conj().T))[0])
        if smallest < -POSITIVITY_TOL:
            raise PositivityViolationError(
                f"eigenvalue {smallest:.3e} at t = {(step + 1) * dt:.6g}; reduce dt"
            )
        times.append((step + 1) * dt)
        densities.append(rho.copy())
        minima.append(smallest)

    traces = np.array([np.trace(r).real for r in densities])
    drift = float(np.max(np.abs(traces - 1.0)))
    if drift > TRACE_WARNING * max(t_end, 1.0):
        logger.warning(f"Master equation trace drifted by {drift:.3e} over t = {t_end}")
    return DensityTrajectory(
        times=np.array(times),
        densities=np.array(densities),
        min_eigenvalues=np.array(minima),
        trace_drift=drift,
    )
