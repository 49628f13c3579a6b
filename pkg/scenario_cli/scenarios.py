# =======================================================================
# scenario_cli/scenarios.py
# =======================================================================
"""
Scenario runners. Each produces the rows of one data artifact (column
sets below) plus a summary, and never touches the filesystem.

    cat                  row, column, re, im        (joint block density)
    ito-tables           left, right, product       (+ golden text table)
    dephasing-diffusive  t, martingale_mean, rho01_filter, rho01_linear,
                         rho01_master, rho01_exact, distance_filter, distance_linear
    dephasing-counting   t, mean_count, poisson_mean, martingale_mean,
                         rho00_filter, rho00_master, distance_filter
    central-limit        nu, counting_value, diffusive_value, gap, mc_mean, mc_se
    position-collapse    t, q_grid, q_closed, dispersion_tracking, dispersion_settling
    appendix-figure      t, q_numeric, q_closed, y, z
"""
import logging
from dataclasses import dataclass
from typing import Callable, Dict, List

import numpy as np

from config import EnsembleConfig
from filter_dynamics import (
    CountingSystem,
    EnsembleRunner,
    FilterSystem,
    GridSpec,
    IntegratorConfig,
    central_limit_study,
    ensemble_average,
    martingale_mean,
    master_equation_evolve,
)
from filter_dynamics.ensemble import AVERAGE_TOL
from free_particle import ObservedParticle, consistency_check, dispersion_relaxation, grid_tracking
from ito_calculus import product_rows, render_product_table
from measurement_models import cat_interact, decohere
from operator_core import DensityOperator, Operator, StateVector, Tolerance, entropy, trace_distance
from operator_core.pauli import SIGMA_X, SIGMA_Z

from .models import RunSettings, ScenarioResult

logger = logging.getLogger(__name__)

RECORD_POINTS = 100


def record_stride(dt: float, t_end: float, points: int = RECORD_POINTS) -> int:
    return max(int(round(t_end / dt)) // points, 1)


def ensemble_config(settings: RunSettings) -> EnsembleConfig:
    return EnsembleConfig(seed=settings.seed, workers=settings.workers, batch_size=settings.batch_size)


def atom_state(amp0: float, amp1: float, tol: Tolerance) -> StateVector:
    return StateVector(np.array([amp0, amp1], dtype=np.complex128)).normalized(tol)


def scenario_defaults(scenario: str, params) -> Dict[str, float]:
    """dt, t_end and trajectories used when neither the file nor the flags set them"""
    if scenario == "dephasing-diffusive":
        return {"dt": 1e-3, "t_end": 1.0 / params.gamma, "trajectories": 10000}
    if scenario == "dephasing-counting":
        return {"dt": 1e-3, "t_end": 10.0 / params.nu, "trajectories": 10000}
    if scenario == "central-limit":
        return {"dt": 1e-3, "t_end": 1.0 / params.gamma, "trajectories": 0}
    if scenario == "position-collapse":
        kappa = ObservedParticle(params.mass, params.lam, 1.0).kappa
        return {"dt": 1e-3 / kappa, "t_end": 6.0 / kappa, "trajectories": 2 * params.pairs}
    if scenario == "appendix-figure":
        return {"dt": 1e-3 / params.kappa, "t_end": 6.0 / params.kappa, "trajectories": 1}
    return {"dt": 1e-3, "t_end": 1.0, "trajectories": 1}


def run_cat(settings: RunSettings, params, tol: Tolerance) -> ScenarioResult:
    psi = atom_state(params.amp0, params.amp1, tol)
    decohered = decohere(cat_interact(psi, tol), tol)
    S = entropy(decohered.reduced, tol)
    joint = decohered.joint.matrix
    rows = [(r, c, float(joint[r, c].real), float(joint[r, c].imag)) for r in range(4) for c in range(4)]
    summary = {
        "S": f"{round(S, 12)} bit",
        "pointer_probabilities": [round(float(p), 12) for p in decohered.probabilities],
        "block_density_diagonal": [round(float(v), 12) for v in np.diag(joint).real],
    }
    return ScenarioResult("cat", ["row", "column", "re", "im"], rows, summary)


def run_ito_tables(settings: RunSettings, params, tol: Tolerance) -> ScenarioResult:
    rows = product_rows()
    return ScenarioResult(
        "ito-tables",
        ["left", "right", "product"],
        rows,
        {"products": len(rows)},
        text=render_product_table(),
    )


def dephasing_system(gamma: float, hbar: float) -> FilterSystem:
    return FilterSystem(hbar, Operator.zeros(2), SIGMA_Z * np.sqrt(gamma))


@dataclass
class DephasingEnsembles:
    system: FilterSystem
    psi0: StateVector
    cfg: IntegratorConfig
    linear: List
    filtered: List
    master: object


def dephasing_ensembles(settings: RunSettings, params, hbar: float, tol: Tolerance) -> DephasingEnsembles:
    system = dephasing_system(params.gamma, hbar)
    psi0 = atom_state(params.amp0, params.amp1, tol)
    cfg = IntegratorConfig(
        dt=settings.dt,
        t_end=settings.t_end,
        seed=settings.seed,
        antithetic=True,
        record_every=record_stride(settings.dt, settings.t_end),
        store_increments=False,
    )
    runner = EnsembleRunner(ensemble_config(settings))
    linear = runner.run_sync("linear-diffusive", system, psi0, cfg, settings.trajectories)
    filtered = runner.run_sync("filter-diffusive", system, psi0, cfg, settings.trajectories)
    master = master_equation_evolve(system, DensityOperator.from_state(psi0, tol), settings.dt, settings.t_end, cfg.record_every)
    return DephasingEnsembles(system, psi0, cfg, linear, filtered, master)


def run_dephasing_diffusive(settings: RunSettings, params, hbar: float, tol: Tolerance) -> ScenarioResult:
    runs = dephasing_ensembles(settings, params, hbar, tol)
    rho01_initial = runs.psi0.amplitudes[0] * np.conj(runs.psi0.amplitudes[1])
    rows = []
    for index, t in enumerate(runs.cfg.record_times()):
        filtered = ensemble_average(runs.filtered, t, "output-measure")
        linear = ensemble_average(runs.linear, t, "input-measure-weighted")
        master = DensityOperator(Operator(runs.master.densities[index]), AVERAGE_TOL)
        rows.append((
            float(t),
            martingale_mean(runs.linear, t, antithetic=True).mean,
            float(filtered.matrix[0, 1].real),
            float(linear.matrix[0, 1].real),
            float(master.matrix[0, 1].real),
            float((rho01_initial * np.exp(-2.0 * params.gamma * t)).real),
            trace_distance(filtered, master),
            trace_distance(linear, master),
        ))
    columns = [
        "t", "martingale_mean", "rho01_filter", "rho01_linear",
        "rho01_master", "rho01_exact", "distance_filter", "distance_linear",
    ]
    final = rows[-1]
    summary = {"trajectories": settings.trajectories, "distance_filter": final[6], "distance_linear": final[7]}
    return ScenarioResult("dephasing-diffusive", columns, rows, summary)


@dataclass
class CountingEnsembles:
    system: CountingSystem
    psi0: StateVector
    cfg: IntegratorConfig
    linear: List
    filtered: List
    master: object


def counting_ensembles(settings: RunSettings, params, hbar: float, tol: Tolerance) -> CountingEnsembles:
    system = CountingSystem(hbar, Operator.zeros(2), SIGMA_X, params.nu)
    psi0 = atom_state(params.amp0, params.amp1, tol)
    cfg = IntegratorConfig(
        dt=settings.dt,
        t_end=settings.t_end,
        seed=settings.seed,
        record_every=record_stride(settings.dt, settings.t_end),
        store_increments=False,
    )
    runner = EnsembleRunner(ensemble_config(settings))
    linear = runner.run_sync("linear-counting", system, psi0, cfg, settings.trajectories)
    filtered = runner.run_sync("filter-counting", system, psi0, cfg, settings.trajectories)
    master = master_equation_evolve(
        system.induced(), DensityOperator.from_state(psi0, tol), settings.dt, settings.t_end, cfg.record_every
    )
    return CountingEnsembles(system, psi0, cfg, linear, filtered, master)


def mean_counts(records, times: np.ndarray) -> np.ndarray:
    counts = np.zeros(times.size)
    for record in records:
        counts += np.searchsorted(np.asarray(record.jump_times), times + 1e-12, side="right")
    return counts / len(records)


def run_dephasing_counting(settings: RunSettings, params, hbar: float, tol: Tolerance) -> ScenarioResult:
    runs = counting_ensembles(settings, params, hbar, tol)
    times = runs.cfg.record_times()
    counts = mean_counts(runs.filtered, times)
    rows = []
    for index, t in enumerate(times):
        filtered = ensemble_average(runs.filtered, t, "output-measure")
        master = DensityOperator(Operator(runs.master.densities[index]), AVERAGE_TOL)
        rows.append((
            float(t),
            float(counts[index]),
            float(params.nu * t),
            martingale_mean(runs.linear, t).mean,
            float(filtered.matrix[0, 0].real),
            float(master.matrix[0, 0].real),
            trace_distance(filtered, master),
        ))
    columns = ["t", "mean_count", "poisson_mean", "martingale_mean", "rho00_filter", "rho00_master", "distance_filter"]
    summary = {"trajectories": settings.trajectories, "mean_count": rows[-1][1], "poisson_mean": rows[-1][2]}
    return ScenarioResult("dephasing-counting", columns, rows, summary)


def central_limit(settings: RunSettings, params, hbar: float, tol: Tolerance):
    L = SIGMA_Z * np.sqrt(params.gamma)
    psi0 = atom_state(params.amp0, params.amp1, tol)
    return central_limit_study(
        L,
        Operator.zeros(2),
        psi0,
        params.nus,
        settings.t_end,
        hbar=hbar,
        trajectories=settings.trajectories,
        dt=settings.dt,
        seed=settings.seed,
        ensemble_config=ensemble_config(settings),
    )


def run_central_limit(settings: RunSettings, params, hbar: float, tol: Tolerance) -> ScenarioResult:
    study = central_limit(settings, params, hbar, tol)
    rows = []
    for nu, value, gap in zip(study.nus, study.counting_values, study.exact_gaps):
        estimate = study.monte_carlo.get(float(nu))
        rows.append((
            float(nu),
            float(value),
            float(study.diffusive_value),
            float(gap),
            "" if estimate is None else estimate.mean,
            "" if estimate is None else estimate.standard_error,
        ))
    summary = {"diffusive_value": study.diffusive_value, "slope": round(study.exact_slope, 6)}
    return ScenarioResult("central-limit", ["nu", "counting_value", "diffusive_value", "gap", "mc_mean", "mc_se"], rows, summary)


def position_reports(settings: RunSettings, params, hbar: float):
    particle = ObservedParticle(params.mass, params.lam, hbar, q0=0.0, v0=params.v0)
    grid = GridSpec(params.n_points, params.x_min, params.x_max)
    stride = record_stride(settings.dt, settings.t_end)
    tracking = grid_tracking(
        particle,
        params.u,
        params.q,
        grid=grid,
        pairs=max(settings.trajectories // 2, 1),
        seed=settings.seed,
        dt=settings.dt,
        t_end=settings.t_end,
        record_every=stride,
    )
    settling = dispersion_relaxation(
        particle,
        grid=grid,
        initial_variance=params.initial_variance,
        seed=settings.seed,
        dt=settings.dt,
        t_end=settings.t_end,
        record_every=stride,
    )
    return particle, tracking, settling


def run_position_collapse(settings: RunSettings, params, hbar: float, tol: Tolerance) -> ScenarioResult:
    particle, tracking, settling = position_reports(settings, params, hbar)
    rows = [
        (float(t), float(qg), float(qc), float(vt), float(vs))
        for t, qg, qc, vt, vs in zip(tracking.times, tracking.q_grid, tracking.q_closed, tracking.dispersion, settling.dispersion)
    ]
    summary = {
        "kappa": particle.kappa,
        "dispersion_limit": particle.dispersion_limit,
        "max_relative_error": tracking.max_relative_error,
    }
    return ScenarioResult(
        "position-collapse",
        ["t", "q_grid", "q_closed", "dispersion_tracking", "dispersion_settling"],
        rows,
        summary,
    )


def appendix_particle(params, hbar: float) -> ObservedParticle:
    return ObservedParticle.with_kappa(params.kappa, mass=1.0, hbar=hbar, v0=params.v0)


def run_appendix_figure(settings: RunSettings, params, hbar: float, tol: Tolerance) -> ScenarioResult:
    report = consistency_check(appendix_particle(params, hbar), params.u, params.q, settings.t_end, settings.dt)
    rows = [
        (float(t), float(qn), float(qc), float(y), float(z))
        for t, qn, qc, y, z in zip(report.times, report.q_numeric, report.q_closed, report.y, report.z)
    ]
    return ScenarioResult(
        "appendix-figure",
        ["t", "q_numeric", "q_closed", "y", "z"],
        rows,
        {"max_relative_error": report.max_relative_error},
    )


def _without_hbar(runner: Callable) -> Callable:
    def run(settings: RunSettings, params, hbar: float, tol: Tolerance) -> ScenarioResult:
        return runner(settings, params, tol)
    return run


RUNNERS: Dict[str, Callable[..., ScenarioResult]] = {
    "cat": _without_hbar(run_cat),
    "ito-tables": _without_hbar(run_ito_tables),
    "dephasing-diffusive": run_dephasing_diffusive,
    "dephasing-counting": run_dephasing_counting,
    "central-limit": run_central_limit,
    "position-collapse": run_position_collapse,
    "appendix-figure": run_appendix_figure,
}
