import logging
import time
from pathlib import Path
from typing import Tuple

from pydantic import BaseModel, ValidationError

from config import AppConfig
from filter_dynamics import CollapseAnnihilatedError, FilterDynamicsError, PositivityViolationError
from free_particle import FreeParticleError
from ito_calculus import ItoAlgebraError
from measurement_models import MeasurementError
from operator_core import OperatorCoreError, Tolerance

from .exceptions import ArtifactIOError, InvariantBreachError, ScenarioError, ScenarioValidationError, UnsupportedScenarioError
from .models import Manifest, RunSettings, ScenarioConfig, ScenarioResult, VerificationReport
from .outputs import package_versions, render_verification, write_artifacts, write_manifest, write_text
from .scenarios import RUNNERS, scenario_defaults
from .suites import SUITES

AMPLITUDE_SCENARIOS = ("cat", "dephasing-diffusive", "dephasing-counting", "central-limit")
DOMAIN_ERRORS = (OperatorCoreError, ItoAlgebraError, MeasurementError, FilterDynamicsError, FreeParticleError)
RUNTIME_BREACHES = (PositivityViolationError, CollapseAnnihilatedError)


class ScenarioService:
    """Resolves scenario configs, runs or verifies them, and writes artifacts with manifests."""

    def __init__(self, config: AppConfig):
        self.config = config
        self.tol = Tolerance.from_config(config.numerics)
        self.logger = logging.getLogger(__name__)

    def resolve(self, cfg: ScenarioConfig) -> Tuple[RunSettings, BaseModel]:
        params = cfg.parameters()
        if cfg.scenario in AMPLITUDE_SCENARIOS:
            norm2 = params.amp0 ** 2 + params.amp1 ** 2
            if norm2 == 0:
                raise ScenarioValidationError("amplitudes amp0 and amp1 are both zero; the atom state has no direction")
            if abs(norm2 - 1.0) > 1e-12:
                self.logger.warning(f"Amplitudes have |amp0|^2 + |amp1|^2 = {norm2:.6g}; normalizing")
                scale = norm2 ** -0.5
                params = params.model_copy(update={"amp0": params.amp0 * scale, "amp1": params.amp1 * scale})
        defaults = scenario_defaults(cfg.scenario, params)
        settings = RunSettings(
            scenario=cfg.scenario,
            seed=self.config.ensemble.seed if cfg.seed is None else cfg.seed,
            dt=defaults["dt"] if cfg.dt is None else cfg.dt,
            t_end=defaults["t_end"] if cfg.t_end is None else cfg.t_end,
            trajectories=int(defaults["trajectories"] if cfg.trajectories is None else cfg.trajectories),
            workers=self.config.ensemble.workers if cfg.workers is None else cfg.workers,
            batch_size=self.config.ensemble.batch_size,
            output_dir=cfg.output or self.config.output.output_dir,
            fmt=cfg.format or self.config.output.output_format,
        )
        if settings.dt > settings.t_end:
            raise ScenarioValidationError(f"dt = {settings.dt} exceeds t_end = {settings.t_end}")
        return settings, params

    def _execute(self, action: str, cfg: ScenarioConfig, work):
        self.logger.info(f"Starting {action} {cfg.scenario}")
        try:
            settings, params = self.resolve(cfg)
            started = time.perf_counter()
            outcome = work(settings, params)
            elapsed = time.perf_counter() - started
        except (ScenarioError, OSError):
            raise
        except RUNTIME_BREACHES as e:
            self.logger.error(f"{action} {cfg.scenario} broke an invariant: {str(e)}")
            raise InvariantBreachError(f"{cfg.scenario}: {e}")
        except (ValidationError, *DOMAIN_ERRORS) as e:
            self.logger.error(f"{action} {cfg.scenario} rejected: {str(e)}")
            raise ScenarioValidationError(f"{cfg.scenario}: {e}")
        except Exception as e:
            self.logger.error(f"{action} {cfg.scenario} failed: {str(e)}")
            raise ScenarioError(f"{action} {cfg.scenario} failed: {e}")
        self.logger.info(f"Finished {action} {cfg.scenario} in {elapsed:.2f}s")
        return settings, params, outcome, elapsed

    def _manifest(self, command: str, settings: RunSettings, params: BaseModel, elapsed: float, artifacts) -> str:
        manifest = Manifest(
            scenario=settings.scenario,
            command=command,
            seed=settings.seed,
            dt=settings.dt,
            t_end=settings.t_end,
            trajectories=settings.trajectories,
            workers=settings.workers,
            format=settings.fmt,
            parameters=params.model_dump(),
            versions=package_versions(),
            wall_time_s=round(elapsed, 6),
            artifacts=[Path(a).name for a in artifacts],
        )
        return write_manifest(manifest, settings.output_dir)

    def run(self, cfg: ScenarioConfig) -> ScenarioResult:
        """Run a scenario and write its data, text artifact and manifest"""
        settings, params, result, elapsed = self._execute(
            "run", cfg, lambda s, p: RUNNERS[s.scenario](s, p, self.config.numerics.hbar, self.tol)
        )
        try:
            result.artifacts = write_artifacts(result, settings.output_dir, settings.fmt)
            result.artifacts.append(self._manifest("run", settings, params, elapsed, result.artifacts))
        except OSError as e:
            raise ArtifactIOError(f"cannot write artifacts for {cfg.scenario}: {e}")
        return result

    def verify(self, cfg: ScenarioConfig) -> VerificationReport:
        """Run the scenario's invariant suite; the rendered report and a manifest are written beside the data"""
        if cfg.scenario not in SUITES:
            raise UnsupportedScenarioError(f"scenario '{cfg.scenario}' has no invariant suite")
        settings, params, report, elapsed = self._execute(
            "verify", cfg, lambda s, p: SUITES[s.scenario](s, p, self.config.numerics.hbar, self.tol)
        )
        failed = [r.name for r in report.results if not r.passed]
        if failed:
            self.logger.warning(f"verify {cfg.scenario}: {len(failed)} invariant(s) failed: {failed}")
        path = Path(settings.output_dir) / f"{settings.scenario}.verify.txt"
        write_text(path, render_verification(report))
        self._manifest("verify", settings, params, elapsed, [str(path)])
        return report
