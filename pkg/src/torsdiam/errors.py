"""Exception hierarchy; each class carries the CLI exit code it maps to."""


class TorsdiamError(Exception):
    exit_code = 4
    kind = "internal"


class ConfigError(TorsdiamError, ValueError):
    exit_code = 2
    kind = "invalid-config"


class ScaleExceeded(TorsdiamError):
    """Raised when an exhaustive routine is asked to go past its ceiling."""

    exit_code = 3
    kind = "scale-exceeded"


class InvariantViolation(TorsdiamError):
    exit_code = 4
    kind = "invariant-violation"


class RejectionCapExceeded(InvariantViolation):
    kind = "rejection-cap-exceeded"


class ConstantTableMissing(ConfigError):
    kind = "constant-table-missing"
