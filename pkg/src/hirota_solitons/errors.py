"""Exception types shared across the package."""


class ConfigError(Exception):
    """Base class for configuration file problems."""


class ConfigSyntaxError(ConfigError):
    """The document is not well-formed (bad JSON)."""


class ConfigSchemaError(ConfigError):
    """The document parses but misses fields or has wrong shapes."""

    def __init__(self, message, point_index=None):
        self.point_index = point_index
        if point_index is not None:
            message = f"point {point_index}: {message}"
        super().__init__(message)


class ConfigDomainError(ConfigError):
    """The document is structurally fine but violates a domain invariant."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations))


class SingularKernel(Exception):
    """The kernel matrix is numerically singular (pathological spectral data)."""

    def __init__(self, cond_estimate, where=None):
        self.cond_estimate = cond_estimate
        self.where = where
        msg = f"kernel matrix numerically singular (cond ~ {cond_estimate:.3g})"
        if where is not None:
            msg += f" at (x, t) = {where}"
        super().__init__(msg)


class PoleHit(Exception):
    """A rational matrix factor was evaluated too close to one of its poles."""


class TailNotDecayed(Exception):
    """The sampled potential has not decayed at the truncation boundary."""

    def __init__(self, endpoint_magnitude, suggested_half_width):
        self.endpoint_magnitude = endpoint_magnitude
        self.suggested_half_width = suggested_half_width
        super().__init__(
            f"potential magnitude {endpoint_magnitude:.3g} at domain boundary; "
            f"retry with half-width >= {suggested_half_width:.3g}"
        )


class NonFiniteState(Exception):
    """An ODE state blew up past the representable range."""


class EvaluationFailure(Exception):
    """A field evaluator failed inside a residual sweep."""
