import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from filter_dynamics import (
    filter_diffusive_batch,
    gaussian_packet,
    GridSpec,
    IntegratorConfig,
    position_observation_system,
    posterior_moments,
    stationary_packet,
    track_registered_path,
)

from .appendix import appendix_q, relative_error
from .exceptions import InvalidParticleError
from .models import ObservedParticle, ObservedPath

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TrackingReport:
    times: np.ndarray
    q_grid: np.ndarray
    q_closed: np.ndarray
    dispersion: np.ndarray
    max_relative_error: float
    pairs: int


def grid_tracking(
    particle: ObservedParticle,
    u: float,
    q: float,
    grid: Optional[GridSpec] = None,
    pairs: int = 50,
    seed: int = 20240607,
    dt: Optional[float] = None,
    t_end: Optional[float] = None,
    record_every: int = 10,
) -> TrackingReport:
    """
    Posterior mean of the grid filter, averaged over antithetic pairs of
    noisy records of y(t) = u t - q, against the closed-form q(t).
    """
    kappa = particle.kappa
    if kappa == 0:
        raise InvalidParticleError("grid tracking needs a positive collapse rate")
    if pairs < 1:
        raise InvalidParticleError("grid tracking needs at least one antithetic pair")
    dt = dt or 1e-3 / kappa
    t_end = t_end or 5.0 / kappa
    system = position_observation_system(particle.mass, particle.lam, particle.hbar, grid=grid)
    psi0 = stationary_packet(system, q0=particle.q0, v0=particle.v0)
    cfg = IntegratorConfig(
        dt=dt,
        t_end=t_end,
        scheme="split-unitary",
        seed=seed,
        antithetic=True,
        record_every=record_every,
        store_increments=False,
    )
    path = ObservedPath.linear(u, q)
    records = track_registered_path(system, psi0, path.y, cfg, list(range(2 * pairs)))

    means, variances = [], []
    for record in records:
        moments = posterior_moments(system.grid, record.states)
        means.append(moments["mean"])
        variances.append(moments["variance"])
    times = records[0].times
    q_grid = np.mean(means, axis=0)
    q_closed = appendix_q(particle, u, q, times)
    error = relative_error(q_grid, q_closed)
    logger.info(f"Grid filter tracks the closed form with max relative error {error:.3e} over {pairs} pairs")
    return TrackingReport(
        times=times,
        q_grid=q_grid,
        q_closed=q_closed,
        dispersion=np.mean(variances, axis=0),
        max_relative_error=error,
        pairs=pairs,
    )


@dataclass(frozen=True)
class DispersionReport:
    times: np.ndarray
    dispersion: np.ndarray
    limit: float
    settle_time: float

    def max_relative_deviation(self) -> float:
        """Largest |V(t) / limit - 1| once t >= settle_time"""
        settled = self.times >= self.settle_time - 1e-12
        return float(np.max(np.abs(self.dispersion[settled] / self.limit - 1.0)))


def dispersion_relaxation(
    particle: ObservedParticle,
    grid: Optional[GridSpec] = None,
    initial_variance: float = 1.0,
    seed: int = 20240607,
    dt: Optional[float] = None,
    t_end: Optional[float] = None,
    record_every: int = 10,
) -> DispersionReport:
    """
    Posterior variance of one sampled grid filter started from an unsettled
    packet with zero position-momentum covariance.

    The packet stays Gaussian, so its variance does not depend on the noise.
    """
    kappa = particle.kappa
    if kappa == 0:
        raise InvalidParticleError("dispersion only settles under observation")
    dt = dt or 1e-3 / kappa
    t_end = t_end or 6.0 / kappa
    system = position_observation_system(particle.mass, particle.lam, particle.hbar, grid=grid)
    psi0 = gaussian_packet(system.grid, particle.q0, particle.mass * particle.v0, initial_variance, 0.0, particle.hbar)
    cfg = IntegratorConfig(
        dt=dt,
        t_end=t_end,
        scheme="split-unitary",
        seed=seed,
        record_every=record_every,
        store_increments=False,
    )
    record = filter_diffusive_batch(system, psi0, cfg, [0])[0]
    dispersion = posterior_moments(system.grid, record.states)["variance"]
    report = DispersionReport(
        times=record.times,
        dispersion=dispersion,
        limit=particle.dispersion_limit,
        settle_time=5.0 / kappa,
    )
    logger.info(f"Posterior dispersion settles to {dispersion[-1]:.4f} against the limit {report.limit:.4f}")
    return report
