"""Exception types raised by statekit.

All subclass ``StatekitError`` (itself a ``ValueError``) so callers can catch
either the package root or builtin ``ValueError``.
"""


class StatekitError(ValueError):
    """Base class for all statekit errors."""


class DimensionMismatchError(StatekitError):
    """Operands have incompatible dimensions."""


class NotUnitaryError(StatekitError):
    """Matrix fails the unitarity check beyond tolerance."""


class NotHermitianError(StatekitError):
    """Matrix fails the hermiticity check beyond tolerance."""


class NotDiagonalError(StatekitError):
    """Operator required to be diagonal has off-diagonal weight."""


class InvalidDistributionError(StatekitError):
    """Probability vector has negative entries or a bad sum."""


class EigensolverError(StatekitError):
    """Eigendecomposition failed to converge or to meet residual bounds."""


class ConfigError(StatekitError):
    """Experiment configuration is malformed or inconsistent."""
