# =======================================================================
# filter_dynamics/linear.py
# =======================================================================
"""
Linear stochastic decoherence equations under the input measure.

    diffusive:  d chi + K chi dt = L chi dy,          dy ~ Normal(0, dt)
    counting:   d chi + G chi dt = (C - I) chi dn,    dn ~ Poisson(nu dt)

with G = nu/2 (C^dagger C - I) + (i/hbar) E. The weight ||chi_t||^2 is the
density of the output measure with respect to the input measure, so its
mean stays at one.
"""
import logging
from typing import List, Sequence

import numpy as np

from operator_core import StateVector

from .integrator import BatchRecorder, initial_batch, stability_guard
from .models import CountingSystem, FilterSystem, IntegratorConfig, TrajectoryRecord
from .noise import NoiseStreams

logger = logging.getLogger(__name__)


def linear_diffusive_batch(
    system: FilterSystem,
    psi0: StateVector,
    cfg: IntegratorConfig,
    indices: Sequence[int],
) -> List[TrajectoryRecord]:
    if cfg.scheme == "split-unitary":
        stability_guard(cfg.dt * system.dissipative_norm(), cfg, "dt * ||L^dagger L / 2||")
        unitary = system.unitary_propagator(cfg.dt)
    else:
        stability_guard(cfg.dt * system.generator_norm(), cfg, "dt * ||K||")
        unitary = None

    chi = initial_batch(psi0, system.dim, len(indices), system.tol)
    noise = NoiseStreams(cfg.seed, indices, cfg.antithetic)
    recorder = BatchRecorder(cfg, indices, system.dim, "linear-diffusive", "input")
    sqrt_dt = np.sqrt(cfg.dt)
    recorder.snapshot(0, chi)

    for step in range(cfg.n_steps):
        dy = sqrt_dt * noise.normal()
        if unitary is not None:
            chi = unitary(chi)
        kick = system.apply_L(chi) * dy[:, None]
        if unitary is not None:
            chi = chi - 0.5 * cfg.dt * system.apply_LdL(chi) + kick
        elif cfg.scheme == "heun-drift":
            drift = -system.apply_K(chi)
            predictor = chi + drift * cfg.dt + kick
            chi = chi + 0.5 * (drift - system.apply_K(predictor)) * cfg.dt + kick
        else:
            chi = chi - system.apply_K(chi) * cfg.dt + kick
        recorder.increments(step, dy)
        recorder.snapshot(step + 1, chi)

    return recorder.records()


def simulate_linear_diffusive(
    system: FilterSystem,
    psi0: StateVector,
    cfg: IntegratorConfig,
    trajectory_index: int = 0,
) -> TrajectoryRecord:
    """One input-measure path of the linear diffusive equation"""
    return linear_diffusive_batch(system, psi0, cfg, [trajectory_index])[0]


def linear_counting_batch(
    system: CountingSystem,
    psi0: StateVector,
    cfg: IntegratorConfig,
    indices: Sequence[int],
) -> List[TrajectoryRecord]:
    generator = system.drift_generator()
    stability_guard(cfg.dt * system.nu, cfg, "nu * dt")
    stability_guard(cfg.dt * float(np.linalg.norm(generator, 2)), cfg, "dt * ||G||")

    chi = initial_batch(psi0, system.dim, len(indices), system.tol)
    noise = NoiseStreams(cfg.seed, indices, cfg.antithetic)
    recorder = BatchRecorder(cfg, indices, system.dim, "linear-counting", "input")
    recorder.snapshot(0, chi)
    C = system.C.data

    for step in range(cfg.n_steps):
        jumped = noise.uniform() < system.nu * cfg.dt
        drifted = chi - cfg.dt * (chi @ generator.T)
        if np.any(jumped):
            drifted[jumped] += chi[jumped] @ C.T - chi[jumped]
            recorder.jumped(step, jumped)
        chi = drifted
        recorder.increments(step, jumped.astype(float))
        recorder.snapshot(step + 1, chi)

    return recorder.records()


def simulate_linear_counting(
    system: CountingSystem,
    psi0: StateVector,
    cfg: IntegratorConfig,
    trajectory_index: int = 0,
) -> TrajectoryRecord:
    """One input-measure path of the linear counting equation"""
    return linear_counting_batch(system, psi0, cfg, [trajectory_index])[0]
