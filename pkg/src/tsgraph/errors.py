"""Exception types shared across the pipeline."""


class TsGraphError(Exception):
    """Base class for all library errors."""


class ConfigError(TsGraphError, ValueError):
    """Invalid configuration or parameters (CLI exit code 2)."""


class DataError(TsGraphError, ValueError):
    """Unreadable, malformed, or out-of-contract input data."""
