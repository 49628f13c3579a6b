from .models import FilterSystem, CountingSystem, IntegratorConfig, TrajectoryRecord, DensityTrajectory
from .noise import NoiseStreams, splitmix64, stream_seed
from .linear import simulate_linear_diffusive, simulate_linear_counting, linear_diffusive_batch, linear_counting_batch
from .nonlinear import simulate_filter_diffusive, filter_diffusive_batch
from .counting import simulate_filter_counting, filter_counting_batch
from .master import master_equation_evolve
from .ensemble import (
    EnsembleRunner,
    MeanEstimate,
    ensemble_average,
    martingale_mean,
    innovation_statistics,
    jump_count_statistics,
    empirical_jump_rate,
    expectation_mean,
    trace_distances,
)
from .bridge import (
    central_limit_bridge,
    commuting_output_law,
    central_limit_study,
    sigma_z_moment,
    log_log_slope,
    CommutingOutputLaw,
    CentralLimitStudy,
)
from .position import (
    GridSpec,
    GridFilterSystem,
    position_observation_system,
    momentum_operator,
    gaussian_packet,
    stationary_packet,
    stationary_variance,
    posterior_moments,
    observation_record,
    track_registered_path,
)
from .exceptions import (
    FilterDynamicsError,
    InvalidSystemError,
    StabilityGuardError,
    PositivityViolationError,
    CollapseAnnihilatedError,
    GridTooCoarseError,
    EmptyEnsembleError,
    GridMismatchError,
)

__version__ = "1.0.0"
__all__ = [
    "FilterSystem",
    "CountingSystem",
    "IntegratorConfig",
    "TrajectoryRecord",
    "DensityTrajectory",
    "NoiseStreams",
    "splitmix64",
    "stream_seed",
    "simulate_linear_diffusive",
    "simulate_linear_counting",
    "linear_diffusive_batch",
    "linear_counting_batch",
    "simulate_filter_diffusive",
    "filter_diffusive_batch",
    "simulate_filter_counting",
    "filter_counting_batch",
    "master_equation_evolve",
    "EnsembleRunner",
    "MeanEstimate",
    "ensemble_average",
    "martingale_mean",
    "innovation_statistics",
    "jump_count_statistics",
    "empirical_jump_rate",
    "expectation_mean",
    "trace_distances",
    "central_limit_bridge",
    "commuting_output_law",
    "central_limit_study",
    "sigma_z_moment",
    "log_log_slope",
    "CommutingOutputLaw",
    "CentralLimitStudy",
    "GridSpec",
    "GridFilterSystem",
    "position_observation_system",
    "momentum_operator",
    "gaussian_packet",
    "stationary_packet",
    "stationary_variance",
    "posterior_moments",
    "observation_record",
    "track_registered_path",
    "FilterDynamicsError",
    "InvalidSystemError",
    "StabilityGuardError",
    "PositivityViolationError",
    "CollapseAnnihilatedError",
    "GridTooCoarseError",
    "EmptyEnsembleError",
    "GridMismatchError",
]
