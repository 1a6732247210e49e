"""Exception types shared across the package."""


class ConfigError(ValueError):
    """Invalid configuration or parameter value."""


class NumericalError(RuntimeError):
    """A numerical routine failed to converge or an invariant check failed."""
