"""Discrete spectral data parameterizing an n-soliton solution.

A configuration holds the number of coupled fields N, the real higher-order
coefficient epsilon, and n spectral points.  Each point carries one simple
eigenvalue in the upper half-plane together with a nonzero seed vector of
length N + 1.  That data determines the reconstructed fields completely.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    ConfigDomainError,
    ConfigSchemaError,
    ConfigSyntaxError,
)

#: Two eigenvalues closer than this (relative) are treated as duplicates.
DUPLICATE_EIGENVALUE_RTOL = 1e-12


@dataclass(frozen=True)
class SpectralPoint:
    """One discrete eigenvalue with its seed vector."""

    lam: complex
    nu0: tuple[complex, ...]


@dataclass(frozen=True)
class SpectralConfig:
    """Complete input for an n-soliton construction."""

    n_fields: int
    epsilon: float
    points: tuple[SpectralPoint, ...]

    @property
    def n_solitons(self) -> int:
        return len(self.points)

    def eigenvalues(self) -> np.ndarray:
        return np.array([p.lam for p in self.points], dtype=complex)

    def seeds(self) -> np.ndarray:
        """Seed vectors as an (n, N+1) array."""
        if not self.points:
            return np.zeros((0, self.n_fields + 1), dtype=complex)
        return np.array([p.nu0 for p in self.points], dtype=complex)


@dataclass(frozen=True)
class Violation:
    """One invariant violation, machine readable."""

    code: str
    point_indices: tuple[int, ...]
    message: str

    def __str__(self):
        return f"{self.code}{list(self.point_indices)}: {self.message}"


def _is_finite_complex(z: complex) -> bool:
    return math.isfinite(z.real) and math.isfinite(z.imag)


def validate(config: SpectralConfig) -> list[Violation]:
    """Return every invariant violation; empty list means the config is valid."""
    out: list[Violation] = []
    if config.n_fields < 1:
        out.append(Violation("NonPositiveFieldCount", (), f"n_fields = {config.n_fields}"))
    if not math.isfinite(config.epsilon):
        out.append(Violation("NonFiniteEpsilon", (), f"epsilon = {config.epsilon}"))
    want_len = config.n_fields + 1
    for i, p in enumerate(config.points):
        if not _is_finite_complex(p.lam) or not all(_is_finite_complex(c) for c in p.nu0):
            out.append(Violation("NonFiniteValue", (i,), "non-finite eigenvalue or seed entry"))
            continue
        if p.lam.imag <= 0:
            out.append(
                Violation(
                    "EigenvalueNotUpperHalfPlane",
                    (i,),
                    f"Im lambda = {p.lam.imag} must be > 0",
                )
            )
        if len(p.nu0) != want_len:
            out.append(
                Violation(
                    "WrongSeedLength",
                    (i,),
                    f"seed has {len(p.nu0)} entries, expected {want_len}",
                )
            )
        if all(c == 0 for c in p.nu0):
            out.append(Violation("ZeroSeedVector", (i,), "seed vector is identically zero"))
    for i in range(len(config.points)):
        for k in range(i + 1, len(config.points)):
            li, lk = config.points[i].lam, config.points[k].lam
            tol = DUPLICATE_EIGENVALUE_RTOL * max(1.0, abs(li), abs(lk))
            if abs(li - lk) < tol:
                out.append(
                    Violation(
                        "DuplicateEigenvalue",
                        (i, k),
                        f"lambda_{i} = {li} and lambda_{k} = {lk} coincide",
                    )
                )
    return out


def _complex_from_obj(obj, where, point_index=None):
    if not isinstance(obj, dict) or set(obj.keys()) != {"re", "im"}:
        raise ConfigSchemaError(
            f"{where}: complex values must be objects with exactly 're' and 'im'",
            point_index,
        )
    re, im = obj["re"], obj["im"]
    if isinstance(re, bool) or isinstance(im, bool) or \
            not isinstance(re, (int, float)) or not isinstance(im, (int, float)):
        raise ConfigSchemaError(f"{where}: 're' and 'im' must be numbers", point_index)
    return complex(float(re), float(im))


def parse_config(text: str, strict: bool = True) -> SpectralConfig:
    """Parse a JSON spectral-data document.

    Values are taken bit-exactly as given (no normalization).  With
    ``strict=True`` domain invariants are enforced and a ConfigDomainError
    carrying all violations is raised; ``strict=False`` defers that to an
    explicit ``validate`` call.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigSyntaxError(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ConfigSchemaError("top level must be an object")
    for key in ("n_fields", "epsilon", "points"):
        if key not in doc:
            raise ConfigSchemaError(f"missing required field '{key}'")
    n_fields = doc["n_fields"]
    if isinstance(n_fields, bool) or not isinstance(n_fields, int):
        raise ConfigSchemaError("'n_fields' must be an integer")
    epsilon = doc["epsilon"]
    if isinstance(epsilon, bool) or not isinstance(epsilon, (int, float)):
        raise ConfigSchemaError("'epsilon' must be a number")
    if not isinstance(doc["points"], list):
        raise ConfigSchemaError("'points' must be a list")

    points = []
    for i, entry in enumerate(doc["points"]):
        if not isinstance(entry, dict):
            raise ConfigSchemaError("point must be an object", i)
        for key in ("lambda", "nu0"):
            if key not in entry:
                raise ConfigSchemaError(f"missing '{key}'", i)
        lam = _complex_from_obj(entry["lambda"], "lambda", i)
        if not isinstance(entry["nu0"], list):
            raise ConfigSchemaError("'nu0' must be a list", i)
        if len(entry["nu0"]) != n_fields + 1:
            raise ConfigSchemaError(
                f"'nu0' has {len(entry['nu0'])} entries, expected {n_fields + 1}", i
            )
        nu0 = tuple(
            _complex_from_obj(c, f"nu0[{j}]", i) for j, c in enumerate(entry["nu0"])
        )
        points.append(SpectralPoint(lam=lam, nu0=nu0))

    config = SpectralConfig(n_fields=n_fields, epsilon=float(epsilon), points=tuple(points))
    if strict:
        violations = validate(config)
        if violations:
            raise ConfigDomainError(violations)
    return config


def _complex_to_obj(z: complex) -> dict:
    return {"re": z.real, "im": z.imag}


def emit_config(config: SpectralConfig) -> str:
    """Serialize a config back to the JSON document format."""
    doc = {
        "n_fields": config.n_fields,
        "epsilon": config.epsilon,
        "points": [
            {
                "lambda": _complex_to_obj(p.lam),
                "nu0": [_complex_to_obj(c) for c in p.nu0],
            }
            for p in config.points
        ],
    }
    return json.dumps(doc, indent=2)


def config_digest(config: SpectralConfig) -> str:
    """Stable hex digest identifying a config's exact contents."""
    canonical = json.dumps(json.loads(emit_config(config)), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode()).hexdigest()[:16]


def gauge_normalize(config: SpectralConfig) -> SpectralConfig:
    """Rescale every seed to unit norm with real positive leading entry.

    The reconstructed field is invariant under per-soliton complex rescaling,
    so this changes nothing downstream; it just gives a canonical form.
    """
    new_points = []
    for p in config.points:
        v = np.array(p.nu0, dtype=complex)
        nrm = float(np.linalg.norm(v))
        lead = next(c for c in v if c != 0)
        # divide out the norm and the phase of the first nonzero entry
        scale = abs(lead) / (lead * nrm)
        w = v * scale
        new_points.append(SpectralPoint(lam=p.lam, nu0=tuple(w.tolist())))
    return SpectralConfig(config.n_fields, config.epsilon, tuple(new_points))
