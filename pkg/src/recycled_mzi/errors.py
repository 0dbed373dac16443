"""Exception types shared across the package."""


class ModelError(ValueError):
    """Base class for all domain errors raised by this package."""


class ParameterError(ModelError):
    """An input is outside the supported domain (loss, amplitude, grid size, ...)."""


class ResonantPoleError(ModelError):
    """The lossless loop is on resonance and has no steady state."""


class ConvergenceError(ModelError):
    """The recycling series does not contract, so no stage count can reach the tolerance."""


class ZeroInformationError(ModelError):
    """The output carries no phase information; the estimation bound diverges."""
