from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .exceptions import InvalidParticleError, NonUniformGridError, SampledPathError

DIFFERENCE_STEP = 1e-4


@dataclass(frozen=True)
class ObservedParticle:
    """Free particle under continuous position observation with accuracy lam"""
    mass: float
    lam: float
    hbar: float = 1.0
    q0: float = 0.0
    v0: float = 0.0

    def __post_init__(self):
        if self.mass <= 0 or self.hbar <= 0:
            raise InvalidParticleError("mass and hbar must be positive")
        if self.lam < 0:
            raise InvalidParticleError(f"observation accuracy must be nonnegative, got {self.lam}")

    @property
    def kappa(self) -> float:
        """Collapse rate (lam hbar / 2m)^(1/2), equal to the oscillation frequency"""
        return float(np.sqrt(self.lam * self.hbar / (2.0 * self.mass)))

    @property
    def dispersion_limit(self) -> float:
        """Stationary posterior variance (hbar / 2 lam m)^(1/2)"""
        if self.lam == 0:
            return float("inf")
        return float(np.sqrt(self.hbar / (2.0 * self.lam * self.mass)))

    @classmethod
    def with_kappa(cls, kappa: float, mass: float = 1.0, hbar: float = 1.0, q0: float = 0.0, v0: float = 0.0) -> 'ObservedParticle':
        return cls(mass=mass, lam=2.0 * mass * kappa ** 2 / hbar, hbar=hbar, q0=q0, v0=v0)


def second_differences(values: np.ndarray, step: float) -> np.ndarray:
    """Centered second differences, second-order one-sided at both ends"""
    values = np.asarray(values, dtype=float)
    if values.size < 4:
        raise NonUniformGridError("a sampled path needs at least four points")
    g = np.empty_like(values)
    g[1:-1] = (values[2:] - 2.0 * values[1:-1] + values[:-2]) / step ** 2
    g[0] = (2.0 * values[0] - 5.0 * values[1] + 4.0 * values[2] - values[3]) / step ** 2
    g[-1] = (2.0 * values[-1] - 5.0 * values[-2] + 4.0 * values[-3] - values[-4]) / step ** 2
    return g


@dataclass(frozen=True, eq=False)
class ObservedPath:
    """
    Registered trajectory y(t) and its effective gravitation g(t) = y''(t).

    Either a callable `trajectory` (with an optional exact `gravitation`)
    or a uniformly sampled series (`times`, `values`).
    """
    trajectory: Optional[Callable[[np.ndarray], np.ndarray]] = None
    gravitation: Optional[Callable[[np.ndarray], np.ndarray]] = None
    times: Optional[np.ndarray] = None
    values: Optional[np.ndarray] = None
    _sampled_g: Optional[np.ndarray] = field(default=None, init=False, repr=False)

    def __post_init__(self):
        if self.trajectory is None:
            if self.times is None or self.values is None:
                raise NonUniformGridError("a path needs a trajectory callable or sampled times and values")
            times = np.asarray(self.times, dtype=float)
            values = np.asarray(self.values, dtype=float)
            if values.shape != times.shape:
                raise SampledPathError(f"path has {values.size} values for {times.size} sample times")
            steps = np.diff(times)
            if steps.size == 0 or np.any(steps <= 0) or not np.allclose(steps, steps[0], rtol=1e-9, atol=0.0):
                raise NonUniformGridError("sampled paths require a uniform, increasing time grid")
            object.__setattr__(self, "_sampled_g", second_differences(values, float(steps[0])))

    @classmethod
    def linear(cls, u: float, q: float) -> 'ObservedPath':
        """y(t) = u t - q, with g = 0"""
        return cls(trajectory=lambda t: u * np.asarray(t, dtype=float) - q, gravitation=lambda t: np.zeros_like(np.asarray(t, dtype=float)))

    @classmethod
    def sampled(cls, times: np.ndarray, values: np.ndarray) -> 'ObservedPath':
        return cls(times=np.asarray(times, dtype=float), values=np.asarray(values, dtype=float))

    def y(self, t) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        if self.trajectory is not None:
            return np.asarray(self.trajectory(t), dtype=float)
        return np.interp(t, self.times, self.values)

    def g(self, t) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        if self.trajectory is None:
            return np.interp(t, self.times, self._sampled_g)
        if self.gravitation is not None:
            return np.asarray(self.gravitation(t), dtype=float)
        h = DIFFERENCE_STEP
        return (self.y(t + h) - 2.0 * self.y(t) + self.y(t - h)) / h ** 2
