"""Shared exception types."""


class ConfigError(ValueError):
    """A scenario, parameter, or detector setting is invalid.

    The message names the offending field or key.
    """


class DegenerateGeometryError(ValueError):
    """Raised when a*Cf == b*Cr exactly.

    At that geometry the lateral-acceleration output row loses its yaw-rate
    dependence and the closed-form invariant zero has a vanishing
    denominator, so the analysis is undefined rather than infinite.
    """
