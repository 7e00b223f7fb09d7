"""Exception types shared across the package."""


class QubolsError(Exception):
    """Base class for qubols-specific failures."""


class DimensionError(QubolsError, ValueError):
    """Input sizes are inconsistent (matrix/vector/bitstring lengths)."""


class ConfigurationError(QubolsError, ValueError):
    """An encoding or builder option is invalid for the requested operation."""


class CapacityError(QubolsError, ValueError):
    """Problem size exceeds a hard solver limit."""


class UnsupportedDegreeError(QubolsError, ValueError):
    """Polynomial degree outside the supported range."""
