"""Exception types shared across the package.

The CLI maps these onto process exit codes, so raising the right class
matters: ConfigError -> 1, DataError -> 2, NumericalError -> 3.
"""


class KgembedError(Exception):
    """Base class for all package errors."""


class ConfigError(KgembedError):
    """Bad configuration: unknown keys, invalid values, usage errors."""


class DataError(KgembedError):
    """Dataset or artifact problems: missing files, malformed records."""


class NumericalError(KgembedError):
    """Numerical failures: NaN/Inf values, shape mismatches."""
