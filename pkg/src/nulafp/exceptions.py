"""Exception types raised by nulafp."""


class NulaError(Exception):
    """Base class for all nulafp errors."""


class DimensionError(NulaError, ValueError):
    """Two vectors that must have equal length do not."""


class InvalidAngleError(NulaError, ValueError):
    """Angle outside the front half-plane [-pi/2, pi/2]."""


class InvalidIndexError(NulaError, ValueError):
    """Grating-lobe index 0 (the main beam) was requested."""


class NonDistinctAoAError(NulaError, ValueError):
    """Main user and interferer share the same angle of arrival."""


class InfeasibleDesignError(NulaError, ValueError):
    """No design satisfies the request (e.g. element budget too small)."""


class DegenerateChannelError(NulaError, ValueError):
    """A user's channel vector is identically zero."""


class ScenarioError(NulaError, ValueError):
    """A scenario file violates the schema.

    The message starts with the path of the offending field,
    e.g. ``users[1].paths[0].aoa_deg``.
    """
