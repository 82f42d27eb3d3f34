"""Exception types shared across the package."""


class CutoffMismatchError(ValueError):
    """Two registers with different per-mode cutoffs were combined."""


class RegisterMismatchError(ValueError):
    """State and operator do not live on the same mode register."""


class TruncationError(ValueError):
    """Requested cutoff is too small for the requested tolerance."""


class HorizonDomainError(ValueError):
    """Coordinates or trajectory left the region covered by the static chart."""


class DegenerateChannelError(ValueError):
    """Both channel amplitudes vanish; teleportation fidelity is undefined."""


class QuadratureError(RuntimeError):
    """Adaptive quadrature failed to reach the requested tolerance."""


class ConfigError(ValueError):
    """Configuration file could not be parsed or validated."""
