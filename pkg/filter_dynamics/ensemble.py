# =======================================================================
# filter_dynamics/ensemble.py
# =======================================================================
from __future__ import annotations

import asyncio
import logging
import time
from dataclasses import dataclass
from typing import TYPE_CHECKING, Callable, List, Literal, Sequence

import numpy as np

from operator_core import DensityOperator, Operator, StateVector, Tolerance, trace_distance

from .counting import filter_counting_batch
from .exceptions import EmptyEnsembleError, FilterDynamicsError, GridMismatchError
from .linear import linear_counting_batch, linear_diffusive_batch
from .models import CountingSystem, IntegratorConfig, TrajectoryRecord
from .nonlinear import filter_diffusive_batch

if TYPE_CHECKING:
    from config import EnsembleConfig

BatchFn = Callable[[object, StateVector, IntegratorConfig, Sequence[int]], List[TrajectoryRecord]]

ENGINES = {
    "linear-diffusive": linear_diffusive_batch,
    "linear-counting": linear_counting_batch,
    "filter-diffusive": filter_diffusive_batch,
    "filter-counting": filter_counting_batch,
}

AVERAGE_TOL = Tolerance(abs_tol=1e-8)


class EnsembleRunner:
    """Runs trajectory batches concurrently on worker threads."""

    def __init__(self, config: EnsembleConfig):
        self.config = config
        self.logger = logging.getLogger(__name__)

    def _batches(self, trajectories: int) -> List[List[int]]:
        size = self.config.batch_size
        return [list(range(start, min(start + size, trajectories))) for start in range(0, trajectories, size)]

    async def run(
        self,
        engine: str,
        system,
        psi0: StateVector,
        cfg: IntegratorConfig,
        trajectories: int,
    ) -> List[TrajectoryRecord]:
        if engine not in ENGINES:
            raise FilterDynamicsError(f"unknown engine '{engine}', expected one of {sorted(ENGINES)}")
        if trajectories < 1:
            raise EmptyEnsembleError("an ensemble needs at least one trajectory")
        batch_fn: BatchFn = ENGINES[engine]
        batches = self._batches(trajectories)
        semaphore = asyncio.Semaphore(max(self.config.workers, 1))
        self.logger.info(
            f"Starting {engine} ensemble: {trajectories} trajectories in {len(batches)} batches on {self.config.workers} workers"
        )
        started = time.perf_counter()

        async def run_batch(indices: List[int]) -> List[TrajectoryRecord]:
            async with semaphore:
                return await asyncio.to_thread(batch_fn, system, psi0, cfg, indices)

        try:
            results = await asyncio.gather(*(run_batch(b) for b in batches))
        except FilterDynamicsError:
            raise
        except Exception as e:
            self.logger.error(f"Ensemble {engine} failed: {str(e)}")
            raise FilterDynamicsError(f"Ensemble {engine} failed: {e}")

        records = [record for batch in results for record in batch]
        self.logger.info(f"Finished {engine} ensemble in {time.perf_counter() - started:.2f}s")
        return records

    def run_sync(self, engine: str, system, psi0: StateVector, cfg: IntegratorConfig, trajectories: int) -> List[TrajectoryRecord]:
        return asyncio.run(self.run(engine, system, psi0, cfg, trajectories))


def _check_grid(records: Sequence[TrajectoryRecord]):
    if not records:
        raise EmptyEnsembleError("cannot average an empty ensemble")
    reference = records[0].times
    for record in records[1:]:
        if record.times.shape != reference.shape or not np.allclose(record.times, reference, rtol=0.0, atol=1e-12):
            raise GridMismatchError(f"trajectory {record.trajectory_index} does not share the time grid")
        if record.dim != records[0].dim:
            raise GridMismatchError(f"trajectory {record.trajectory_index} has a different dimension")


def ensemble_average(
    records: Sequence[TrajectoryRecord],
    t: float,
    weighting: Literal["output-measure", "input-measure-weighted"] = "output-measure",
) -> DensityOperator:
    """
    Estimate rho(t).

    output-measure: plain mean of the posterior projectors.
    input-measure-weighted: ||chi||^2-weighted mean of the normalized
    projectors, self-normalized by the total weight.
    """
    _check_grid(records)
    index = records[0].time_index(t)
    states = np.stack([r.states[index] for r in records])
    norm2 = np.array([r.norm2[index] for r in records])
    if weighting == "output-measure":
        unit = states / np.sqrt(norm2)[:, None]
        rho = np.einsum("bi,bj->ij", unit, unit.conj()) / len(records)
    elif weighting == "input-measure-weighted":
        rho = np.einsum("bi,bj->ij", states, states.conj()) / norm2.sum()
    else:
        raise FilterDynamicsError(f"unknown weighting '{weighting}'")
    return DensityOperator(Operator(0.5 * (rho + rho.conj().T)), AVERAGE_TOL)


@dataclass(frozen=True)
class MeanEstimate:
    mean: float
    standard_error: float
    samples: int

    def within(self, expected: float, n_se: float = 4.0) -> bool:
        return abs(self.mean - expected) <= n_se * max(self.standard_error, 1e-300)


def _estimate(values: np.ndarray) -> MeanEstimate:
    values = np.asarray(values, dtype=float)
    if values.size == 0:
        raise EmptyEnsembleError("no samples to estimate from")
    se = float(values.std(ddof=1) / np.sqrt(values.size)) if values.size > 1 else float("inf")
    return MeanEstimate(float(values.mean()), se, int(values.size))


def _pair_means(records: Sequence[TrajectoryRecord], values: np.ndarray) -> np.ndarray:
    """Collapse antithetic partners (2k, 2k+1) into one sample each"""
    indices = np.array([r.trajectory_index for r in records])
    order = np.argsort(indices)
    sorted_values, sorted_indices = values[order], indices[order]
    if sorted_values.size % 2 or np.any(sorted_indices[1::2] != sorted_indices[0::2] + 1):
        return values
    return 0.5 * (sorted_values[0::2] + sorted_values[1::2])


def martingale_mean(records: Sequence[TrajectoryRecord], t: float, antithetic: bool = False) -> MeanEstimate:
    """Mean of ||chi_t||^2 across linear trajectories; one under the input measure"""
    _check_grid(records)
    index = records[0].time_index(t)
    weights = np.array([r.norm2[index] for r in records])
    return _estimate(_pair_means(records, weights) if antithetic else weights)


def innovation_statistics(records: Sequence[TrajectoryRecord]) -> dict:
    """Mean and variance/dt of all innovation increments, with standard errors"""
    stored = [r.innovations for r in records if r.innovations is not None]
    if not stored:
        raise EmptyEnsembleError("no innovation increments were stored")
    increments = np.concatenate(stored)
    dt = records[0].dt
    mean = _estimate(increments)
    scaled = increments ** 2 / dt
    return {"mean": mean, "variance_per_dt": _estimate(scaled)}


def jump_count_statistics(records: Sequence[TrajectoryRecord]) -> MeanEstimate:
    return _estimate(np.array([r.jump_count for r in records], dtype=float))


def empirical_jump_rate(
    system: CountingSystem,
    psi: StateVector,
    dt: float,
    trajectories: int,
    seed: int,
) -> MeanEstimate:
    """Jump frequency per unit time over one step from psi, to compare with nu ||C psi||^2"""
    cfg = IntegratorConfig(dt=dt, t_end=dt, seed=seed, store_increments=True)
    records = filter_counting_batch(system, psi, cfg, list(range(trajectories)))
    counts = np.array([r.jump_count for r in records], dtype=float) / dt
    return _estimate(counts)


def expectation_mean(records: Sequence[TrajectoryRecord], A: Operator, t: float, power: int = 1) -> MeanEstimate:
    """Ensemble mean of Re<A>^power at time t across posterior trajectories"""
    _check_grid(records)
    index = records[0].time_index(t)
    values = np.array([r.expectation(A)[index].real for r in records]) ** power
    return _estimate(values)


def trace_distances(records: Sequence[TrajectoryRecord], reference: Callable[[float], DensityOperator], weighting: str) -> np.ndarray:
    """Trace distance to a reference solution at every recorded time"""
    _check_grid(records)
    return np.array([
        trace_distance(ensemble_average(records, t, weighting), reference(t)) for t in records[0].times
    ])
