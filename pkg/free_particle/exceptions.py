"""Custom exceptions for the observed free particle"""

class FreeParticleError(Exception):
    """Base exception for free particle errors"""
    pass


class InvalidParticleError(FreeParticleError):
    """Raised when mass, hbar or observation accuracy are out of range"""
    pass


class AccuracyGuardError(FreeParticleError):
    """Raised when the deviation ODE step is too coarse (dt <= 0 or dt * kappa > 0.1)"""
    pass


class NonUniformGridError(FreeParticleError):
    """Raised when a sampled path is not on a uniform time grid"""
    pass


class ClosedFormUnavailableError(FreeParticleError):
    """Raised when the collapse formula is used without observation (kappa = 0)"""
    pass


class SampledPathError(FreeParticleError):
    """Raised when sampled path values do not match their time grid"""
    pass
