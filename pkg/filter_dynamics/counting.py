import logging
from typing import List, Sequence

import numpy as np

from operator_core import StateVector

from .exceptions import CollapseAnnihilatedError
from .integrator import BatchRecorder, initial_batch, row_norm2, stability_guard
from .models import CountingSystem, IntegratorConfig, TrajectoryRecord
from .noise import NoiseStreams

logger = logging.getLogger(__name__)


def filter_counting_batch(
    system: CountingSystem,
    psi0: StateVector,
    cfg: IntegratorConfig,
    indices: Sequence[int],
) -> List[TrajectoryRecord]:
    """
    Posterior under counting observation, sampled by thinning.

    A jump happens in a step with probability nu ||C psi||^2 dt and maps
    psi to C psi / ||C psi||; otherwise psi follows the smooth drift
    -(nu/2 (C^dagger C - ||C psi||^2) + (i/hbar) E) psi.
    """
    C = system.C.data
    CdC = system.CdC
    stability_guard(cfg.dt * system.nu * float(np.linalg.norm(CdC, 2)), cfg, "nu * ||C||^2 * dt")
    base = 0.5 * system.nu * CdC + (1j / system.hbar) * system.E.data
    stability_guard(cfg.dt * float(np.linalg.norm(base, 2)), cfg, "dt * ||drift||")

    psi = initial_batch(psi0, system.dim, len(indices), system.tol)
    noise = NoiseStreams(cfg.seed, indices, cfg.antithetic)
    recorder = BatchRecorder(cfg, indices, system.dim, "filter-counting", "output")
    recorder.snapshot(0, psi)
    sqrt_nu = np.sqrt(system.nu)

    for step in range(cfg.n_steps):
        C_psi = psi @ C.T
        intensity = row_norm2(C_psi)
        jumped = noise.uniform() < np.minimum(system.nu * intensity * cfg.dt, 1.0)
        drifted = psi - cfg.dt * (psi @ base.T - 0.5 * system.nu * intensity[:, None] * psi)
        if np.any(jumped):
            if np.any(intensity[jumped] <= system.tol.abs_tol):
                rows = [indices[k] for k in np.flatnonzero(jumped & (intensity <= system.tol.abs_tol))]
                raise CollapseAnnihilatedError(
                    f"jump drawn at t = {(step + 1) * cfg.dt:.6g} while C annihilates the state (trajectories {rows})"
                )
            drifted[jumped] = C_psi[jumped] / np.sqrt(intensity[jumped])[:, None]
            recorder.jumped(step, jumped)
        if cfg.renormalize_each_step:
            drifted = drifted / np.sqrt(row_norm2(drifted))[:, None]
        psi = drifted

        norm_C = np.sqrt(intensity)
        dn = jumped.astype(float)
        with np.errstate(divide="ignore", invalid="ignore"):
            innovation = np.where(jumped, dn / (sqrt_nu * norm_C), 0.0) - sqrt_nu * norm_C * cfg.dt
        recorder.increments(step, dn, innovation)
        recorder.snapshot(step + 1, psi)

    return recorder.records()


def simulate_filter_counting(
    system: CountingSystem,
    psi0: StateVector,
    cfg: IntegratorConfig,
    trajectory_index: int = 0,
) -> TrajectoryRecord:
    """One posterior trajectory under counting observation"""
    return filter_counting_batch(system, psi0, cfg, [trajectory_index])[0]
