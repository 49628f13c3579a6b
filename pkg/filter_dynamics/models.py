from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Literal, Optional

import numpy as np
from pydantic import BaseModel, Field, model_validator
from scipy import linalg

from operator_core import DEFAULT_TOLERANCE, DensityOperator, Operator, StateVector, Tolerance

from .exceptions import InvalidSystemError

K_IDENTITY_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class FilterSystem:
    """
    Continuous diffusive observation model (hbar, H, L).

    The generator K = 1/2 L^dagger L + (i/hbar) H is always derived from
    H and L, never stored.
    """
    hbar: float
    H: Operator
    L: Operator
    tol: Tolerance = field(default=DEFAULT_TOLERANCE, repr=False)

    def __post_init__(self):
        if self.hbar <= 0:
            raise InvalidSystemError(f"hbar must be positive, got {self.hbar}")
        if self.H.dim != self.L.dim:
            raise InvalidSystemError(f"H has dim {self.H.dim} but L has dim {self.L.dim}")
        if not self.H.is_hermitian(self.tol):
            raise InvalidSystemError("Hamiltonian H is not Hermitian within tolerance")

    @classmethod
    def from_generator(cls, hbar: float, H: Operator, L: Operator, K: Operator, tol: Tolerance = DEFAULT_TOLERANCE) -> 'FilterSystem':
        """Accept an externally supplied K only when it agrees with (H, L)"""
        system = cls(hbar, H, L, tol)
        LdL = L.data.conj().T @ L.data
        identity_defect = float(np.max(np.abs(K.data + K.data.conj().T - LdL)))
        if identity_defect > K_IDENTITY_TOL:
            raise InvalidSystemError(f"K + K^dagger differs from L^dagger L by {identity_defect:.3e}")
        mismatch = float(np.max(np.abs(K.data - system.K.data)))
        if mismatch > K_IDENTITY_TOL:
            raise InvalidSystemError(f"K differs from 1/2 L^dagger L + (i/hbar) H by {mismatch:.3e}")
        return system

    @property
    def dim(self) -> int:
        return self.H.dim

    @cached_property
    def LdL(self) -> np.ndarray:
        return self.L.data.conj().T @ self.L.data

    @cached_property
    def K(self) -> Operator:
        return Operator(0.5 * self.LdL + (1j / self.hbar) * self.H.data)

    def k_identity_defect(self) -> float:
        K = self.K.data
        return float(np.max(np.abs(K + K.conj().T - self.LdL)))

    @cached_property
    def l_diagonal(self) -> Optional[np.ndarray]:
        """Diagonal of L when L is diagonal, else None"""
        L = self.L.data
        if np.any(L - np.diag(np.diag(L))):
            return None
        return np.diag(L).copy()

    @cached_property
    def l_hermitian(self) -> bool:
        return self.L.is_hermitian(self.tol)

    def apply_L(self, states: np.ndarray) -> np.ndarray:
        """L acting on each row of a (batch, dim) array"""
        if self.l_diagonal is not None:
            return states * self.l_diagonal
        return states @ self.L.data.T

    def apply_LdL(self, states: np.ndarray) -> np.ndarray:
        if self.l_diagonal is not None:
            return states * np.abs(self.l_diagonal) ** 2
        return states @ self.LdL.T

    def apply_K(self, states: np.ndarray) -> np.ndarray:
        return states @ self.K.data.T

    def dissipative_norm(self) -> float:
        """Spectral norm of 1/2 L^dagger L, the part left to Euler under split-unitary"""
        return float(0.5 * np.linalg.norm(self.LdL, 2))

    def generator_norm(self) -> float:
        return float(np.linalg.norm(self.K.data, 2))

    def unitary_propagator(self, dt: float) -> Callable[[np.ndarray], np.ndarray]:
        """exp(-i H dt / hbar) acting on rows"""
        U = linalg.expm(-1j * self.H.data * dt / self.hbar)
        return lambda states: states @ U.T


@dataclass(frozen=True, eq=False)
class CountingSystem:
    """Counting observation model (hbar, E, C, nu) with Poisson intensity nu"""
    hbar: float
    E: Operator
    C: Operator
    nu: float
    tol: Tolerance = field(default=DEFAULT_TOLERANCE, repr=False)

    def __post_init__(self):
        if self.hbar <= 0:
            raise InvalidSystemError(f"hbar must be positive, got {self.hbar}")
        if self.nu <= 0:
            raise InvalidSystemError(f"intensity nu must be positive, got {self.nu}")
        if self.E.dim != self.C.dim:
            raise InvalidSystemError(f"E has dim {self.E.dim} but C has dim {self.C.dim}")
        if not self.E.is_hermitian(self.tol):
            raise InvalidSystemError("energy operator E is not Hermitian within tolerance")

    @property
    def dim(self) -> int:
        return self.E.dim

    @cached_property
    def CdC(self) -> np.ndarray:
        return self.C.data.conj().T @ self.C.data

    def induced(self) -> FilterSystem:
        """L = nu^(1/2) (C - I), H = E + i (nu/2) (C - C^dagger) scaled by hbar"""
        C = self.C.data
        L = np.sqrt(self.nu) * (C - np.eye(self.dim))
        H = self.E.data + 1j * self.hbar * (self.nu / 2.0) * (C - C.conj().T)
        return FilterSystem(self.hbar, Operator(H), Operator(L), self.tol)

    def drift_generator(self) -> np.ndarray:
        """nu/2 (C^dagger C - I) + (i/hbar) E, the linear counting drift"""
        return 0.5 * self.nu * (self.CdC - np.eye(self.dim)) + (1j / self.hbar) * self.E.data

    def jump_rate(self, psi: StateVector) -> float:
        """Conditional intensity nu ||C psi||^2 at a normalized state"""
        branch = self.C.data @ psi.amplitudes
        return float(self.nu * np.vdot(branch, branch).real / psi.norm2)


class IntegratorConfig(BaseModel):
    """Fixed-step integration settings shared by every engine"""
    dt: float = Field(..., gt=0, description="Time step")
    t_end: float = Field(..., gt=0, description="Final time")
    scheme: Literal["euler-maruyama", "heun-drift", "split-unitary"] = "euler-maruyama"
    seed: int = Field(20240607, ge=0, lt=2 ** 64)
    renormalize_each_step: bool = True
    record_every: int = Field(1, ge=1, description="Store the state every n steps")
    store_increments: bool = True
    antithetic: bool = False
    force: bool = Field(False, description="Run even when the stability guard trips")

    @model_validator(mode="after")
    def check_grid(self) -> 'IntegratorConfig':
        if self.dt > self.t_end:
            raise ValueError(f"dt = {self.dt} exceeds t_end = {self.t_end}")
        return self

    @property
    def n_steps(self) -> int:
        return max(int(round(self.t_end / self.dt)), 1)

    def record_steps(self) -> np.ndarray:
        steps = set(range(0, self.n_steps + 1, self.record_every))
        steps.add(self.n_steps)
        return np.array(sorted(steps), dtype=int)

    def record_times(self) -> np.ndarray:
        return self.record_steps() * self.dt


@dataclass(frozen=True, eq=False)
class TrajectoryRecord:
    """
    One sample path omega: recorded states, norm^2 weights and increments.

    For linear (input-measure) runs `states` holds the unnormalized chi and
    `norm2` its weight; for filters the states are normalized posteriors.
    `dy` holds observation increments (dY for diffusive runs, jump counts
    dn for counting runs).
    """
    kind: str
    trajectory_index: int
    measure: Literal["input", "output"]
    dt: float
    times: np.ndarray
    states: np.ndarray
    norm2: np.ndarray
    dy: Optional[np.ndarray] = None
    innovations: Optional[np.ndarray] = None
    jump_times: np.ndarray = field(default_factory=lambda: np.empty(0))

    def __post_init__(self):
        if self.states.shape[0] != self.times.size or self.norm2.size != self.times.size:
            raise ValueError("states, norm2 and times must have matching lengths")
        if np.any(self.norm2 <= 0):
            raise ValueError("norm^2 weights must be positive")

    @property
    def dim(self) -> int:
        return self.states.shape[1]

    @property
    def jump_count(self) -> int:
        return int(self.jump_times.size)

    @property
    def final_state(self) -> StateVector:
        return StateVector(self.states[-1])

    def time_index(self, t: float) -> int:
        hits = np.flatnonzero(np.isclose(self.times, t, rtol=0.0, atol=0.5 * self.dt))
        if hits.size == 0:
            raise KeyError(f"time {t} is not on the recorded grid")
        return int(hits[0])

    def normalized_states(self) -> np.ndarray:
        return self.states / np.sqrt(self.norm2)[:, None]

    def expectation(self, A: Operator) -> np.ndarray:
        """<psi|A|psi> / ||psi||^2 at every recorded time"""
        psi = self.states
        return np.einsum("ti,ij,tj->t", psi.conj(), A.data, psi) / self.norm2

    def projector_at(self, t: float) -> DensityOperator:
        psi = self.normalized_states()[self.time_index(t)]
        return DensityOperator(Operator(np.outer(psi, psi.conj())), Tolerance(abs_tol=1e-8))


@dataclass(frozen=True)
class DensityTrajectory:
    """Deterministic solution of the master equation on a time grid"""
    times: np.ndarray
    densities: np.ndarray
    min_eigenvalues: np.ndarray
    trace_drift: float

    def at(self, t: float) -> DensityOperator:
        index = int(np.argmin(np.abs(self.times - t)))
        return DensityOperator(Operator(self.densities[index]), Tolerance(abs_tol=1e-8))

    def element(self, row: int, column: int) -> np.ndarray:
        return self.densities[:, row, column]
