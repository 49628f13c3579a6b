# =======================================================================
# config.py
# =======================================================================
import os
from dataclasses import dataclass
from dotenv import load_dotenv

load_dotenv()


@dataclass
class NumericsConfig:
    """Numerical constants shared by every package"""
    hbar: float = 1.0
    abs_tol: float = 1e-10
    rank_tol: float = 1e-8

    @classmethod
    def from_env(cls) -> 'NumericsConfig':
        hbar = float(os.getenv('QSIM_HBAR', '1.0'))
        if hbar <= 0:
            raise ValueError("QSIM_HBAR must be positive")
        abs_tol = float(os.getenv('QSIM_ABS_TOL', '1e-10'))
        if abs_tol < 0:
            raise ValueError("QSIM_ABS_TOL must be nonnegative")
        return cls(
            hbar=hbar,
            abs_tol=abs_tol,
            rank_tol=float(os.getenv('QSIM_RANK_TOL', '1e-8'))
        )


@dataclass
class EnsembleConfig:
    """Monte Carlo ensemble defaults"""
    seed: int = 20240607
    workers: int = 1
    batch_size: int = 2048

    @classmethod
    def from_env(cls) -> 'EnsembleConfig':
        workers = int(os.getenv('QSIM_WORKERS', '1'))
        if workers < 1:
            raise ValueError("QSIM_WORKERS must be at least 1")
        return cls(
            seed=int(os.getenv('QSIM_SEED', '20240607')),
            workers=workers,
            batch_size=int(os.getenv('QSIM_BATCH_SIZE', '2048'))
        )


@dataclass
class OutputConfig:
    """Where and how scenario artifacts are written"""
    output_dir: str = "runs"
    output_format: str = "csv"

    @classmethod
    def from_env(cls) -> 'OutputConfig':
        output_format = os.getenv('QSIM_OUTPUT_FORMAT', 'csv')
        if output_format not in ("csv", "jsonl"):
            raise ValueError("QSIM_OUTPUT_FORMAT must be 'csv' or 'jsonl'")
        return cls(
            output_dir=os.getenv('QSIM_OUTPUT_DIR', 'runs'),
            output_format=output_format
        )


@dataclass
class AppConfig:
    """
    Central configuration holding the settings for all packages.
    """
    numerics: NumericsConfig
    ensemble: EnsembleConfig
    output: OutputConfig

    @classmethod
    def from_env(cls) -> 'AppConfig':
        """Load all configurations from environment variables"""
        return cls(
            numerics=NumericsConfig.from_env(),
            ensemble=EnsembleConfig.from_env(),
            output=OutputConfig.from_env()
        )
