"""
Nonlinear posterior filter for diffusive observation.

With r = Re<psi|L psi>, L~ = L - r and K~ = K - r L + r^2/2 the posterior obeys

    d psi + K~ psi dt = L~ psi dy~,   dY = 2 r dt + dy~,

where the innovation y~ is a standard Wiener process under the output
measure. K~ equals 1/2 L~^dagger L~ + (i/hbar) H~ with
H~ = H + (i hbar / 2)(L - L^dagger) r.
"""
import logging
from typing import List, Optional, Sequence

import numpy as np

from operator_core import StateVector

from .integrator import BatchRecorder, initial_batch, row_expectation, row_norm2, stability_guard
from .models import FilterSystem, IntegratorConfig, TrajectoryRecord
from .noise import NoiseStreams

logger = logging.getLogger(__name__)


def _dissipative_drift(system: FilterSystem, psi: np.ndarray):
    """(-L^dagger L / 2 + r L - r^2 / 2) psi, together with r and L psi"""
    L_psi = system.apply_L(psi)
    r = row_expectation(psi, L_psi).real / row_norm2(psi)
    drift = -0.5 * system.apply_LdL(psi) + r[:, None] * L_psi - 0.5 * (r ** 2)[:, None] * psi
    return drift, r, L_psi


def _full_drift(system: FilterSystem, psi: np.ndarray):
    drift, r, L_psi = _dissipative_drift(system, psi)
    return drift - (1j / system.hbar) * (psi @ system.H.data.T), r, L_psi


def filter_diffusive_batch(
    system: FilterSystem,
    psi0: StateVector,
    cfg: IntegratorConfig,
    indices: Sequence[int],
    observation: Optional[np.ndarray] = None,
) -> List[TrajectoryRecord]:
    """
    Integrate a batch of posterior trajectories.

    `observation`, when given, is a prescribed record of increments dY with
    shape (n_steps,) or (batch, n_steps); the innovations are then
    dY - 2 r dt rather than sampled.
    """
    if cfg.scheme == "split-unitary":
        stability_guard(cfg.dt * system.dissipative_norm(), cfg, "dt * ||L^dagger L / 2||")
        unitary = system.unitary_propagator(cfg.dt)
        drift_of = _dissipative_drift
    else:
        stability_guard(cfg.dt * system.generator_norm(), cfg, "dt * ||K||")
        unitary = None
        drift_of = _full_drift

    if observation is not None:
        observation = np.broadcast_to(np.asarray(observation, dtype=float), (len(indices), cfg.n_steps))

    psi = initial_batch(psi0, system.dim, len(indices), system.tol)
    noise = NoiseStreams(cfg.seed, indices, cfg.antithetic) if observation is None else None
    recorder = BatchRecorder(cfg, indices, system.dim, "filter-diffusive", "output")
    sqrt_dt = np.sqrt(cfg.dt)
    recorder.snapshot(0, psi)

    for step in range(cfg.n_steps):
        if unitary is not None:
            psi = unitary(psi)
        drift, r, L_psi = drift_of(system, psi)
        if observation is None:
            innovation = sqrt_dt * noise.normal()
        else:
            innovation = observation[:, step] - 2.0 * r * cfg.dt
        kick = (L_psi - r[:, None] * psi) * innovation[:, None]
        if cfg.scheme == "heun-drift":
            predictor = psi + drift * cfg.dt + kick
            predictor_drift, _, _ = drift_of(system, predictor / np.sqrt(row_norm2(predictor))[:, None])
            psi = psi + 0.5 * (drift + predictor_drift) * cfg.dt + kick
        else:
            psi = psi + drift * cfg.dt + kick
        if cfg.renormalize_each_step:
            psi = psi / np.sqrt(row_norm2(psi))[:, None]
        recorder.increments(step, innovation + 2.0 * r * cfg.dt, innovation)
        recorder.snapshot(step + 1, psi)

    return recorder.records()


def simulate_filter_diffusive(
    system: FilterSystem,
    psi0: StateVector,
    cfg: IntegratorConfig,
    trajectory_index: int = 0,
    observation: Optional[np.ndarray] = None,
) -> TrajectoryRecord:
    """One posterior trajectory, sampled or driven by a prescribed record dY"""
    return filter_diffusive_batch(system, psi0, cfg, [trajectory_index], observation)[0]
