"""Exception hierarchy shared across the package."""


class MetaisingError(Exception):
    """Base class for all package errors."""


class ParameterError(MetaisingError):
    """Invalid user-supplied parameters (parity, ranges, preconditions)."""


class CapacityError(MetaisingError):
    """Exact computation requested above its exhaustive size cap."""


class GenerationError(MetaisingError):
    """Random graph generation exhausted its rejection budget."""


class CensoredSampleError(MetaisingError):
    """Monte Carlo exponent estimation received a censored hitting-time sample."""
