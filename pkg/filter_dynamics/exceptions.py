"""Custom exceptions for the time-continuous filter engines"""

class FilterDynamicsError(Exception):
    """Base exception for filter dynamics errors"""
    pass


class InvalidSystemError(FilterDynamicsError):
    """Raised when (H, L) or (E, C, nu) violate the model invariants"""
    pass


class StabilityGuardError(FilterDynamicsError):
    """Raised when dt is too large for the chosen scheme and the run is not forced"""
    pass


class PositivityViolationError(FilterDynamicsError):
    """Raised when an integrated density acquires a negative eigenvalue"""
    pass


class CollapseAnnihilatedError(FilterDynamicsError):
    """Raised when a jump is drawn while the collapse operator annihilates the state"""
    pass


class GridTooCoarseError(FilterDynamicsError):
    """Raised when a position packet is narrower than two grid cells"""
    pass


class EmptyEnsembleError(FilterDynamicsError):
    """Raised when averaging over no trajectories"""
    pass


class GridMismatchError(FilterDynamicsError):
    """Raised when trajectories to be averaged do not share a time grid"""
    pass
