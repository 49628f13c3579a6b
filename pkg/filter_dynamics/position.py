# =======================================================================
# filter_dynamics/position.py
# =======================================================================
"""
Continuous position observation of a particle on a periodic grid.

    L = (lam / 2)^(1/2) x,   H = p^2 / 2m + phi(x),
    dY = (2 lam)^(1/2) X dt + dy

p is the spectral (Fourier) derivative; the split-unitary scheme applies
exp(-i H dt / hbar) as a Strang splitting of potential and kinetic parts.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np
from scipy import fft

from operator_core import DEFAULT_TOLERANCE, Operator, StateVector

from .exceptions import GridTooCoarseError, InvalidSystemError
from .models import FilterSystem, IntegratorConfig, TrajectoryRecord
from .noise import NoiseStreams
from .nonlinear import filter_diffusive_batch

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GridSpec:
    n_points: int = 256
    x_min: float = -10.0
    x_max: float = 10.0

    def __post_init__(self):
        if self.n_points < 4 or self.n_points & (self.n_points - 1):
            raise InvalidSystemError(f"grid size must be a power of two, got {self.n_points}")
        if self.x_max <= self.x_min:
            raise InvalidSystemError("grid needs x_max > x_min")

    @property
    def dx(self) -> float:
        return (self.x_max - self.x_min) / self.n_points

    @property
    def x(self) -> np.ndarray:
        return self.x_min + self.dx * np.arange(self.n_points)

    @property
    def k(self) -> np.ndarray:
        return 2.0 * np.pi * fft.fftfreq(self.n_points, d=self.dx)


def stationary_variance(mass: float, lam: float, hbar: float = 1.0) -> float:
    """Limit posterior variance (hbar / 2 lam m)^(1/2)"""
    return float(np.sqrt(hbar / (2.0 * lam * mass)))


def _spectral_matrix(grid: GridSpec, symbol: np.ndarray) -> np.ndarray:
    """Dense matrix of the Fourier multiplier with the given symbol"""
    transform = fft.fft(np.eye(grid.n_points), axis=0)
    matrix = fft.ifft(symbol[:, None] * transform, axis=0)
    return 0.5 * (matrix + matrix.conj().T)


@dataclass(frozen=True, eq=False)
class GridFilterSystem(FilterSystem):
    grid: GridSpec = field(default_factory=GridSpec)
    mass: float = 1.0
    lam: float = 0.0
    potential: Optional[np.ndarray] = field(default=None, repr=False)

    @property
    def kappa(self) -> float:
        return float(np.sqrt(self.lam * self.hbar / (2.0 * self.mass)))

    def dissipative_norm(self) -> float:
        return float(0.25 * self.lam * np.max(self.grid.x ** 2))

    def unitary_propagator(self, dt: float) -> Callable[[np.ndarray], np.ndarray]:
        kinetic = np.exp(-1j * self.hbar * self.grid.k ** 2 * dt / (2.0 * self.mass))
        if self.potential is None:
            return lambda states: fft.ifft(kinetic * fft.fft(states, axis=-1), axis=-1)
        half_potential = np.exp(-0.5j * self.potential * dt / self.hbar)

        def propagate(states: np.ndarray) -> np.ndarray:
            states = half_potential * states
            states = fft.ifft(kinetic * fft.fft(states, axis=-1), axis=-1)
            return half_potential * states

        return propagate


def position_observation_system(
    mass: float,
    lam: float,
    hbar: float = 1.0,
    potential: Optional[Callable[[np.ndarray], np.ndarray]] = None,
    grid: Optional[GridSpec] = None,
) -> GridFilterSystem:
    if mass <= 0 or hbar <= 0:
        raise InvalidSystemError("mass and hbar must be positive")
    if lam < 0:
        raise InvalidSystemError(f"observation accuracy lam must be nonnegative, got {lam}")
    grid = grid or GridSpec()
    x = grid.x
    H = _spectral_matrix(grid, hbar ** 2 * grid.k ** 2 / (2.0 * mass))
    values = None
    if potential is not None:
        values = np.asarray(potential(x), dtype=float)
        H = H + np.diag(values)
    if lam > 0 and np.sqrt(stationary_variance(mass, lam, hbar)) < 2.0 * grid.dx:
        raise GridTooCoarseError(
            f"stationary packet width {np.sqrt(stationary_variance(mass, lam, hbar)):.3g} is below two grid cells ({2 * grid.dx:.3g})"
        )
    L = Operator(np.diag(np.sqrt(lam / 2.0) * x))
    return GridFilterSystem(
        hbar=hbar,
        H=Operator(H),
        L=L,
        tol=DEFAULT_TOLERANCE,
        grid=grid,
        mass=mass,
        lam=lam,
        potential=values,
    )


def momentum_operator(grid: GridSpec, hbar: float = 1.0) -> Operator:
    """Spectral p = -i hbar d/dx"""
    return Operator(_spectral_matrix(grid, hbar * grid.k))


def gaussian_packet(
    grid: GridSpec,
    q0: float,
    p0: float,
    variance: float,
    covariance: float = 0.0,
    hbar: float = 1.0,
) -> StateVector:
    """
    exp(-A (x - q0)^2 + i p0 x / hbar) with A = (1 - 2i c / hbar) / (4 variance),
    c the symmetrized position-momentum covariance.
    """
    if variance <= 0:
        raise InvalidSystemError("packet variance must be positive")
    if np.sqrt(variance) < 2.0 * grid.dx:
        raise GridTooCoarseError(f"packet width {np.sqrt(variance):.3g} is below two grid cells ({2 * grid.dx:.3g})")
    A = (1.0 - 2j * covariance / hbar) / (4.0 * variance)
    x = grid.x
    amplitudes = np.exp(-A * (x - q0) ** 2 + 1j * p0 * x / hbar)
    return StateVector(amplitudes).normalized()


def stationary_packet(system: GridFilterSystem, q0: float = 0.0, v0: float = 0.0) -> StateVector:
    """Posterior packet already at the stationary variance, with covariance hbar / 2"""
    variance = stationary_variance(system.mass, system.lam, system.hbar)
    return gaussian_packet(system.grid, q0, system.mass * v0, variance, system.hbar / 2.0, system.hbar)


def posterior_moments(grid: GridSpec, states: np.ndarray) -> Dict[str, np.ndarray]:
    """Posterior mean q and dispersion ||(x - q) psi||^2 for each row of states"""
    density = np.abs(np.atleast_2d(states)) ** 2
    density = density / density.sum(axis=1, keepdims=True)
    x = grid.x
    mean = density @ x
    variance = density @ (x ** 2) - mean ** 2
    return {"mean": mean, "variance": variance}


def observation_record(
    system: GridFilterSystem,
    path: Callable[[np.ndarray], np.ndarray],
    cfg: IntegratorConfig,
    indices: Sequence[int],
) -> np.ndarray:
    """Increments dY = (2 lam)^(1/2) y(t) dt + dw of a registered trajectory y, one row per index"""
    noise = NoiseStreams(cfg.seed, indices, cfg.antithetic)
    t = cfg.dt * np.arange(cfg.n_steps)
    drift = np.sqrt(2.0 * system.lam) * np.asarray(path(t), dtype=float) * cfg.dt
    dw = np.sqrt(cfg.dt) * noise.normal_block(cfg.n_steps)
    return drift[None, :] + dw


def track_registered_path(
    system: GridFilterSystem,
    psi0: StateVector,
    path: Callable[[np.ndarray], np.ndarray],
    cfg: IntegratorConfig,
    indices: Sequence[int],
) -> List[TrajectoryRecord]:
    """Grid filters driven by noisy records of the registered path y(t)"""
    record = observation_record(system, path, cfg, indices)
    return filter_diffusive_batch(system, psi0, cfg, indices, observation=record)
