"""Shared plumbing for the fixed-step engines: guards, initial states, recording."""
import logging
from typing import List, Optional, Sequence

import numpy as np

from operator_core import DEFAULT_TOLERANCE, StateVector, Tolerance, DimensionMismatchError

from .exceptions import FilterDynamicsError, StabilityGuardError
from .models import IntegratorConfig, TrajectoryRecord

logger = logging.getLogger(__name__)

STABILITY_LIMIT = 0.1


def stability_guard(product: float, cfg: IntegratorConfig, what: str):
    """Refuse dt * rate above STABILITY_LIMIT unless the run is forced"""
    if product <= STABILITY_LIMIT:
        return
    message = f"{what} = {product:.3g} exceeds {STABILITY_LIMIT} at dt = {cfg.dt}"
    if not cfg.force:
        raise StabilityGuardError(f"{message}; reduce dt or set force")
    logger.warning(f"{message}; continuing because the run is forced")


def initial_batch(psi0: StateVector, dim: int, size: int, tol: Tolerance = DEFAULT_TOLERANCE) -> np.ndarray:
    if psi0.dim != dim:
        raise DimensionMismatchError(f"initial state dim {psi0.dim} does not match system dim {dim}")
    if not psi0.is_normalized(tol):
        raise FilterDynamicsError(f"initial state has norm2 {psi0.norm2:.12f}, expected 1")
    return np.tile(psi0.amplitudes, (size, 1)).astype(np.complex128)


def row_norm2(states: np.ndarray) -> np.ndarray:
    return np.einsum("bi,bi->b", states.conj(), states).real


def row_expectation(states: np.ndarray, applied: np.ndarray) -> np.ndarray:
    """<psi|A psi> per row, given the rows of A psi"""
    return np.einsum("bi,bi->b", states.conj(), applied)


class BatchRecorder:
    """Collects snapshots and increments for a batch and splits them into records"""

    def __init__(self, cfg: IntegratorConfig, indices: Sequence[int], dim: int, kind: str, measure: str):
        self.cfg = cfg
        self.indices = list(indices)
        self.kind = kind
        self.measure = measure
        self.record_steps = cfg.record_steps()
        self._record_set = set(self.record_steps.tolist())
        self.states = np.empty((len(self.indices), self.record_steps.size, dim), dtype=np.complex128)
        self.norm2 = np.empty((len(self.indices), self.record_steps.size))
        self._slot = 0
        n_steps = cfg.n_steps if cfg.store_increments else 0
        self.dy = np.zeros((len(self.indices), n_steps))
        self.innovations = np.zeros((len(self.indices), n_steps))
        self.jumps: List[List[float]] = [[] for _ in self.indices]

    def snapshot(self, step: int, states: np.ndarray):
        if step not in self._record_set:
            return
        self.states[:, self._slot] = states
        self.norm2[:, self._slot] = row_norm2(states)
        self._slot += 1

    def increments(self, step: int, dy: np.ndarray, innovation: Optional[np.ndarray] = None):
        if not self.cfg.store_increments:
            return
        self.dy[:, step] = dy
        if innovation is not None:
            self.innovations[:, step] = innovation

    def jumped(self, step: int, mask: np.ndarray):
        t = (step + 1) * self.cfg.dt
        for row in np.flatnonzero(mask):
            self.jumps[row].append(t)

    def records(self) -> List[TrajectoryRecord]:
        times = self.record_steps * self.cfg.dt
        store = self.cfg.store_increments
        return [
            TrajectoryRecord(
                kind=self.kind,
                trajectory_index=int(index),
                measure=self.measure,
                dt=self.cfg.dt,
                times=times,
                states=self.states[row],
                norm2=self.norm2[row],
                dy=self.dy[row] if store else None,
                innovations=self.innovations[row] if store and self.measure == "output" else None,
                jump_times=np.asarray(self.jumps[row]),
            )
            for row, index in enumerate(self.indices)
        ]
