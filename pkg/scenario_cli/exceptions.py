"""Custom exceptions for the scenario command line"""

class ScenarioError(Exception):
    """Base exception for scenario errors"""
    pass


class ScenarioValidationError(ScenarioError):
    """Raised when a scenario configuration fails validation (exit code 2)"""
    pass


class ArtifactIOError(ScenarioError):
    """Raised when an artifact or manifest cannot be written (exit code 3)"""
    pass


class UnsupportedScenarioError(ScenarioValidationError):
    """Raised when a scenario has no runner or no invariant suite"""
    pass


class InvariantBreachError(ScenarioError):
    """Raised when a run loses positivity or annihilates a posterior (exit code 1)"""
    pass
