"""Error and warning types shared across the toolkit."""


class InvalidArgumentError(ValueError):
    """An argument violates a documented precondition."""


class SamplingError(ValueError):
    """A closed-form function produced a non-finite value at a grid node."""

    def __init__(self, message, node_index=None):
        super().__init__(message)
        self.node_index = node_index


class InvalidWeightError(ValueError):
    """A quadrature weight field is not strictly positive."""


class WeightInvariantViolationError(ValueError):
    """A weight model violates the standing positivity assumption on its Laplacian."""


class DynamicRangeError(OverflowError):
    """An exponential factor leaves the representable floating-point range."""

    def __init__(self, message, node_index=None):
        super().__init__(message)
        self.node_index = node_index


class ConfigError(ValueError):
    """A run configuration could not be parsed or validated."""


class BoundaryMassWarning(UserWarning):
    """A field carries non-negligible mass near the truncation boundary."""


class TruncationMassWarning(UserWarning):
    """A truncated integral left non-negligible tail mass outside the domain."""
