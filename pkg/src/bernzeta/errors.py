"""Shared exception types."""


class PrecisionError(ValueError):
    """An operation cannot certify its result at the requested precision;
    callers may retry with more guard digits / higher input precision."""


class SingularDeltaError(ValueError):
    """An algorithm requiring a nonsingular pair difference was invoked on
    a singular one."""
