__all__ = [
    "AirlaneError",
    "DomainError",
    "OutOfRangeError",
    "ConfigError",
    "InfeasibleResampleError",
    "InsufficientDataError",
    "AlignmentError",
    "TemporalRangeError",
    "PlanningTimeoutError",
    "RepairFailedError",
    "VerificationFailedError",
    "ScenarioError",
]


# -------------------------------------------------
class AirlaneError(Exception):
    """Base class for every error raised by the airlane package."""


# -------------------------------------------------
class DomainError(AirlaneError, ValueError):
    pass


# -------------------------------------------------
class OutOfRangeError(AirlaneError, ValueError):
    pass


# -------------------------------------------------
class ConfigError(AirlaneError, ValueError):
    pass


# -------------------------------------------------
class InfeasibleResampleError(AirlaneError, ValueError):
    """Raised when resampling from a previous batch keeps falling outside
    the allowed region, which signals a divergent batch."""


# -------------------------------------------------
class InsufficientDataError(AirlaneError, ValueError):
    pass


# -------------------------------------------------
class AlignmentError(AirlaneError, ValueError):
    pass


# -------------------------------------------------
class TemporalRangeError(AirlaneError, ValueError):
    pass


# -------------------------------------------------
class PlanningTimeoutError(AirlaneError, RuntimeError):
    pass


# -------------------------------------------------
class RepairFailedError(AirlaneError, RuntimeError):
    pass


# -------------------------------------------------
class VerificationFailedError(AirlaneError, RuntimeError):
    def __init__(self, message: str, horizon: int | None = None):
        super().__init__(message)
        self.horizon = horizon


# -------------------------------------------------
class ScenarioError(AirlaneError, ValueError):
    """An input file that does not parse or validate. ``details`` carries one
    located diagnostic per problem (``line 3, column 7`` or ``nfzs.0.polygon``)."""

    def __init__(self, message: str, details: list | None = None):
        super().__init__(message)
        self.details = details or []
