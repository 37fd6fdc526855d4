"""Exception types shared across the toolkit.

The CLI maps these onto exit codes: config problems exit 2, numeric-range
problems exit 3, simulation failures exit 4.
"""


class VoctrlError(Exception):
    """Base class for all voctrl errors."""


class DomainError(VoctrlError, ValueError):
    """An argument lies outside the admissible domain (e.g. t outside [0, T])."""


class MetadataError(VoctrlError, ValueError):
    """Holder regularity metadata is required but missing or underivable."""


class NumericRangeError(VoctrlError, ValueError):
    """A quantity left the numerically trustworthy range (degree caps, overflow)."""


class SimulationError(VoctrlError, RuntimeError):
    """Path simulation failed (non-finite control or state values)."""


class ConfigError(VoctrlError, ValueError):
    """A run configuration file or override could not be parsed or validated."""
