"""Exception types shared across the laboratory."""


class StableSdeError(Exception):
    """Base class for all laboratory errors."""


class ParameterError(StableSdeError, ValueError):
    """A configuration or constructor argument violates its contract."""


class DomainError(StableSdeError, ValueError):
    """An evaluation was requested outside the mathematical domain."""


class PicardError(StableSdeError, RuntimeError):
    """The mild-solution fixed point iteration failed to contract."""


class DiscretizationError(StableSdeError, RuntimeError):
    """A discrete monotonicity/consistency property failed beyond tolerance."""
