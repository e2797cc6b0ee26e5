"""Exception types shared across the package.

The CLI maps LoadError to exit code 2 and ConfigError to exit code 3.
"""


class ProbDimError(Exception):
    """Base class for all probdim errors."""


class LoadError(ProbDimError):
    """A file could not be read or decoded."""


class ConfigError(ProbDimError):
    """A parameter or dataset violates a contract."""
