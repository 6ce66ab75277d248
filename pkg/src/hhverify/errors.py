"""Exception types shared across the package."""


class DomainError(ValueError):
    """An input lies outside the mathematical domain of an operation."""


class ParameterError(ValueError):
    """A required parameter is missing, superfluous, or out of range."""


class ConfigError(ValueError):
    """A run configuration is invalid; the message names the offending field."""


class QuadratureError(RuntimeError):
    """An integral required by a check did not converge within budget."""

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result
