# =======================================================================
# filter_dynamics/bridge.py
# =======================================================================
"""
Counting systems that converge to a diffusive filter as nu grows, and the
exact output-measure law of commuting (diagonal) models used as a
noise-free oracle for the gap between the two.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import TYPE_CHECKING, Callable, Dict, Optional, Sequence, Union

import numpy as np
from numpy.polynomial.hermite_e import hermegauss
from scipy.special import softmax, xlogy
from scipy.stats import poisson

from operator_core import Operator, StateVector
from operator_core.pauli import SIGMA_Z

from .exceptions import InvalidSystemError
from .models import CountingSystem, FilterSystem, IntegratorConfig
from .ensemble import EnsembleRunner, MeanEstimate, expectation_mean

if TYPE_CHECKING:
    from config import EnsembleConfig

logger = logging.getLogger(__name__)

PopulationFn = Callable[[np.ndarray], np.ndarray]


def central_limit_bridge(L: Operator, H: Operator, nu: float, hbar: float = 1.0) -> CountingSystem:
    """C = I + nu^(-1/2) L, E = H + hbar nu^(1/2) / (2i) (L - L^dagger)"""
    if nu <= 0:
        raise InvalidSystemError(f"intensity nu must be positive, got {nu}")
    C = Operator.identity(L.dim) + L * (nu ** -0.5)
    E = H + (L - L.dagger()) * (hbar * np.sqrt(nu) / 2j)
    return CountingSystem(hbar=hbar, E=Operator(0.5 * (E.data + E.data.conj().T)), C=C, nu=nu)


def _diagonal(op: Operator, name: str) -> np.ndarray:
    if np.any(np.abs(op.data - np.diag(np.diag(op.data))) > 0):
        raise InvalidSystemError(f"{name} must be diagonal for the commuting output law")
    return np.diag(op.data).copy()


@dataclass(frozen=True)
class CommutingOutputLaw:
    """
    Law of the posterior populations at time t for a diagonal model.

    The observation statistic (Y_t for diffusive, N_t for counting) is a
    mixture over basis states k with weights |psi_k|^2; given the statistic
    the posterior populations follow from Bayes' rule in closed form.
    """
    kind: str
    t: float
    prior: np.ndarray
    rates: np.ndarray
    nodes: int = 80

    def posterior(self, statistic: np.ndarray) -> np.ndarray:
        """Posterior populations, one row per value of the observation statistic"""
        s = np.asarray(statistic, dtype=float)[:, None]
        with np.errstate(divide="ignore"):
            log_prior = np.log(self.prior)[None, :]
        if self.kind == "diffusive":
            a = self.rates[None, :]
            log_weights = log_prior + 2.0 * a * s - 2.0 * a ** 2 * self.t
        else:
            intensity = self.rates[None, :]
            log_weights = log_prior + xlogy(s, intensity) - intensity * self.t
        return softmax(log_weights, axis=1)

    def expect(self, f: PopulationFn) -> float:
        """E[f(posterior populations)] under the output measure"""
        total = 0.0
        if self.kind == "diffusive":
            x, w = hermegauss(self.nodes)
            w = w / np.sqrt(2.0 * np.pi)
            for weight, a in zip(self.prior, self.rates):
                if weight == 0:
                    continue
                y = 2.0 * a * self.t + np.sqrt(self.t) * x
                total += weight * float(np.dot(w, f(self.posterior(y))))
        else:
            top = float(np.max(self.rates)) * self.t
            counts = np.arange(0, int(top + 12.0 * np.sqrt(top) + 30))
            populations = self.posterior(counts)
            values = f(populations)
            for weight, intensity in zip(self.prior, self.rates):
                if weight == 0:
                    continue
                total += weight * float(np.dot(poisson.pmf(counts, intensity * self.t), values))
        return total


def commuting_output_law(
    system: Union[FilterSystem, CountingSystem],
    psi0: StateVector,
    t: float,
    nodes: int = 80,
) -> CommutingOutputLaw:
    prior = np.abs(psi0.amplitudes) ** 2 / psi0.norm2
    if isinstance(system, CountingSystem):
        _diagonal(system.E, "E")
        c = _diagonal(system.C, "C")
        return CommutingOutputLaw("counting", t, prior, system.nu * np.abs(c) ** 2, nodes)
    _diagonal(system.H, "H")
    l = _diagonal(system.L, "L")
    return CommutingOutputLaw("diffusive", t, prior, l.real, nodes)


def sigma_z_moment(power: int = 2) -> PopulationFn:
    """Population function (p0 - p1)^power, i.e. <sigma_z>^power for a qubit"""
    return lambda p: (p[:, 0] - p[:, 1]) ** power


@dataclass(frozen=True)
class CentralLimitStudy:
    nus: np.ndarray
    diffusive_value: float
    counting_values: np.ndarray
    exact_gaps: np.ndarray
    exact_slope: float
    monte_carlo: Dict[float, MeanEstimate]
    monte_carlo_diffusive: Optional[MeanEstimate]

    def slope_within(self, target: float = -0.5, factor: float = 2.0) -> bool:
        return target * factor <= self.exact_slope <= target / factor

    def monte_carlo_consistent(self, n_se: float = 4.0) -> bool:
        """Every Monte Carlo counting estimate agrees with its exact value"""
        return all(
            estimate.within(exact, n_se)
            for (nu, estimate), exact in zip(sorted(self.monte_carlo.items()), self.counting_values)
        )


def log_log_slope(x: Sequence[float], y: Sequence[float]) -> float:
    return float(np.polyfit(np.log(np.asarray(x, dtype=float)), np.log(np.asarray(y, dtype=float)), 1)[0])


def central_limit_study(
    L: Operator,
    H: Operator,
    psi0: StateVector,
    nus: Sequence[float],
    t_end: float,
    hbar: float = 1.0,
    trajectories: int = 0,
    dt: float = 1e-3,
    seed: int = 20240607,
    ensemble_config: Optional[EnsembleConfig] = None,
) -> CentralLimitStudy:
    """
    Gap in E[<sigma_z>(T)^2] between bridge counting filters and the
    diffusive filter, exactly and (when trajectories > 0) by Monte Carlo.
    """
    moment = sigma_z_moment(2)
    diffusive = FilterSystem(hbar, H, L)
    diffusive_value = commuting_output_law(diffusive, psi0, t_end).expect(moment)
    bridges = [central_limit_bridge(L, H, nu, hbar) for nu in nus]
    counting_values = np.array([commuting_output_law(b, psi0, t_end).expect(moment) for b in bridges])
    gaps = np.abs(counting_values - diffusive_value)
    slope = log_log_slope(nus, gaps)
    logger.info(f"Central-limit gaps {gaps.tolist()} for nu = {list(nus)}, slope {slope:.3f}")

    monte_carlo: Dict[float, MeanEstimate] = {}
    monte_carlo_diffusive = None
    if trajectories > 0:
        if ensemble_config is None:
            raise InvalidSystemError("a Monte Carlo study needs an ensemble configuration")
        runner = EnsembleRunner(ensemble_config)
        cfg = IntegratorConfig(dt=dt, t_end=t_end, seed=seed, record_every=10 ** 9, store_increments=False)
        records = runner.run_sync("filter-diffusive", diffusive, psi0, cfg, trajectories)
        monte_carlo_diffusive = expectation_mean(records, SIGMA_Z, t_end, power=2)
        for nu, bridge in zip(nus, bridges):
            step = min(dt, 0.05 / (nu * float(np.linalg.norm(bridge.CdC, 2))))
            counting_cfg = IntegratorConfig(dt=step, t_end=t_end, seed=seed, record_every=10 ** 9, store_increments=False)
            records = runner.run_sync("filter-counting", bridge, psi0, counting_cfg, trajectories)
            monte_carlo[float(nu)] = expectation_mean(records, SIGMA_Z, t_end, power=2)

    return CentralLimitStudy(
        nus=np.asarray(nus, dtype=float),
        diffusive_value=diffusive_value,
        counting_values=counting_values,
        exact_gaps=gaps,
        exact_slope=slope,
        monte_carlo=monte_carlo,
        monte_carlo_diffusive=monte_carlo_diffusive,
    )
