"""Exception types shared across the package."""


class InvalidParameterError(ValueError):
    """An argument is outside the documented domain (bad alpha, theta, probability, ...)."""


class ZeroProbabilityError(ValueError):
    """An observation with zero marginal probability was conditioned on."""


class SizeCapError(ValueError):
    """An enumeration would exceed the configured size cap; refusing to subsample."""


class OptimizerError(RuntimeError):
    """A numerical routine failed (NaN objective, non-convergent iteration)."""
