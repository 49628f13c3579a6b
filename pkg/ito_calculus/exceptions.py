"""Custom exceptions for the Ito algebra engine"""

class ItoAlgebraError(Exception):
    """Base exception for Ito algebra errors"""
    pass


class UnknownBasisError(ItoAlgebraError):
    """Raised when a basis differential name is not recognised"""
    pass


class NoiseDimensionError(ItoAlgebraError):
    """Raised when elements of different noise dimension are combined"""
    pass


class IndexRangeError(ItoAlgebraError):
    """Raised when a Minkowski index lies outside the HP table"""
    pass


class InvalidParameterError(ItoAlgebraError):
    """Raised for negative or nonpositive scalar parameters"""
    pass
