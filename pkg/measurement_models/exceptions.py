"""Custom exceptions for the measurement models"""

class MeasurementError(Exception):
    """Base exception for measurement model errors"""
    pass


class UnnormalizedStateError(MeasurementError):
    """Raised when an input state is not normalized within tolerance"""
    pass


class NotBlockSupportedError(MeasurementError):
    """Raised when a joint state carries amplitude off the pointer diagonal"""
    pass


class ZeroProbabilityError(MeasurementError):
    """Raised when conditioning on an outcome of zero probability"""
    pass


class InstrumentNotNormalizedError(MeasurementError):
    """Raised when sum_y V(y)^dagger V(y) mu(y) differs from the identity"""
    pass
