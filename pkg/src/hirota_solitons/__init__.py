"""Multi-soliton solutions of the N-coupled Hirota equations.

Construction from discrete spectral data through the reflectionless
Riemann-Hilbert formula, with independent numerical verification against the
PDE itself, the zero-curvature condition, and the direct scattering problem.
"""

__version__ = "0.1.0"

from .engine import (
    EvolvedVectors,
    FieldSample,
    KernelMatrix,
    SechParameters,
    build_kernel,
    evaluate_field,
    evolve_vectors,
    one_soliton_closed_form,
    one_soliton_sech_form,
    phase_exponent,
    rh_factor_lower,
    rh_factor_upper,
)
from .errors import (
    ConfigDomainError,
    ConfigError,
    ConfigSchemaError,
    ConfigSyntaxError,
    EvaluationFailure,
    NonFiniteState,
    PoleHit,
    SingularKernel,
    TailNotDecayed,
)
from .spectral import (
    SpectralConfig,
    SpectralPoint,
    Violation,
    config_digest,
    emit_config,
    gauge_normalize,
    parse_config,
    validate,
)

__all__ = [
    "ConfigDomainError",
    "ConfigError",
    "ConfigSchemaError",
    "ConfigSyntaxError",
    "EvaluationFailure",
    "EvolvedVectors",
    "FieldSample",
    "KernelMatrix",
    "NonFiniteState",
    "PoleHit",
    "SechParameters",
    "SingularKernel",
    "SpectralConfig",
    "SpectralPoint",
    "TailNotDecayed",
    "Violation",
    "build_kernel",
    "config_digest",
    "emit_config",
    "evaluate_field",
    "evolve_vectors",
    "gauge_normalize",
    "one_soliton_closed_form",
    "one_soliton_sech_form",
    "parse_config",
    "phase_exponent",
    "rh_factor_lower",
    "rh_factor_upper",
    "validate",
]
