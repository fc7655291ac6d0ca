"""Exception types shared across the package."""


class ConfigError(ValueError):
    """Raised for unreadable, malformed, or constraint-violating configuration."""


class NumericPreconditionError(ValueError):
    """Raised when a numeric routine is called outside its domain of validity
    (step size too coarse, zero fringe slope, degenerate levels, ...)."""
