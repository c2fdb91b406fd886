"""Exception hierarchy for hardyops."""


class HardyOpsError(Exception):
    """Base class for all errors raised by this package."""


class NonPositiveWeight(HardyOpsError, ValueError):
    """A weight sequence contains a value that is not strictly positive."""


class ZeroScale(HardyOpsError, ValueError):
    """A scale factor (or symbol coefficient) that must be nonzero is zero."""


class DegreeExceedsWeights(HardyOpsError, ValueError):
    """A degree exceeds the last index at which the weights are known.

    Weight sequences are finite; nothing is ever extrapolated past ``n_max``.
    """


class InsufficientHeadroom(HardyOpsError, ValueError):
    """The working degree leaves too little room above the evaluation block."""


class SpaceMismatch(HardyOpsError, ValueError):
    """Operands live on incompatible weight sequences or degrees."""


class ConfigError(HardyOpsError, ValueError):
    """A configuration document or command line is invalid."""
