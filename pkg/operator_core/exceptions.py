"""Custom exceptions for the operator core"""

class OperatorCoreError(Exception):
    """Base exception for operator core errors"""
    pass


class DimensionMismatchError(OperatorCoreError):
    """Raised when operand dimensions do not agree"""
    pass


class NotHermitianError(OperatorCoreError):
    """Raised when an operator fails the Hermiticity predicate"""
    pass


class NotProjectorError(OperatorCoreError):
    """Raised when an operator fails the orthoprojector predicate"""
    pass


class InvalidDensityError(OperatorCoreError):
    """Raised when a matrix is not a valid statistical operator"""
    pass


class NegativeVarianceError(OperatorCoreError):
    """Raised when a computed variance is negative beyond tolerance"""
    pass


class ZeroNormError(OperatorCoreError):
    """Raised when a vector cannot be normalized"""
    pass


class SerializationError(OperatorCoreError):
    """Raised when the text schema cannot be decoded"""
    pass
