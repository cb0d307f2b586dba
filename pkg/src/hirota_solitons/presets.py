"""Reference spectral configurations used by the test suite and docs.

The one-soliton reference reproduces the published bell-shaped profile with
leading seed entry 1, second 0.5, third 0.2, eigenvalue 0.5 + 0.5i and unit
higher-order coefficient.  The source only pins the first three seed entries
plus a zero offset xi = 0; zero offset forces the remaining component to have
|delta|^2 = 1 - 0.25 - 0.04 = 0.71.  We adopt delta real positive = sqrt(0.71);
any phase would do (gauge-equivalent up to a component phase rotation, which
only rotates the phase of q_3).
"""

import math

from .spectral import SpectralConfig, SpectralPoint


def one_soliton_reference() -> SpectralConfig:
    """Three-field one-soliton reference (peak |q_1| = 0.5)."""
    return SpectralConfig(
        n_fields=3,
        epsilon=1.0,
        points=(
            SpectralPoint(
                lam=0.5 + 0.5j,
                nu0=(1.0 + 0j, 0.5 + 0j, 0.2 + 0j, math.sqrt(0.71) + 0j),
            ),
        ),
    )


def two_soliton_reference() -> SpectralConfig:
    """Generic three-field two-soliton config with well-separated velocities."""
    return SpectralConfig(
        n_fields=3,
        epsilon=1.0,
        points=(
            SpectralPoint(
                lam=0.5 + 0.5j,
                nu0=(1.0 + 0j, 0.5 + 0j, 0.2 + 0j, math.sqrt(0.71) + 0j),
            ),
            SpectralPoint(
                lam=0.1 + 0.6j,
                nu0=(1.0 + 0j, 0.3 + 0.2j, -0.4 + 0j, 0.5 - 0.1j),
            ),
        ),
    )


def scalar_soliton_reference(n_solitons: int = 1) -> SpectralConfig:
    """Single-field (N = 1) configs with 1..3 solitons for residual sweeps."""
    all_points = (
        SpectralPoint(lam=0.5 + 0.5j, nu0=(1.0 + 0j, 0.6 + 0.2j)),
        SpectralPoint(lam=0.1 + 0.6j, nu0=(1.0 + 0j, -0.4 + 0.5j)),
        SpectralPoint(lam=-0.45 + 0.35j, nu0=(0.8 + 0j, 0.3 - 0.7j)),
    )
    if not 1 <= n_solitons <= len(all_points):
        raise ValueError(f"n_solitons must be 1..{len(all_points)}")
    return SpectralConfig(n_fields=1, epsilon=1.0, points=all_points[:n_solitons])


def vector_soliton_reference(n_solitons: int = 1) -> SpectralConfig:
    """Three-field (N = 3) configs with 1..3 solitons for residual sweeps."""
    all_points = (
        SpectralPoint(
            lam=0.5 + 0.5j,
            nu0=(1.0 + 0j, 0.5 + 0j, 0.2 + 0j, math.sqrt(0.71) + 0j),
        ),
        SpectralPoint(
            lam=0.1 + 0.6j,
            nu0=(1.0 + 0j, 0.3 + 0.2j, -0.4 + 0j, 0.5 - 0.1j),
        ),
        SpectralPoint(
            lam=-0.45 + 0.35j,
            nu0=(0.9 - 0.1j, -0.2 + 0.4j, 0.6 + 0j, 0.1 + 0.3j),
        ),
    )
    if not 1 <= n_solitons <= len(all_points):
        raise ValueError(f"n_solitons must be 1..{len(all_points)}")
    return SpectralConfig(n_fields=3, epsilon=1.0, points=all_points[:n_solitons])
