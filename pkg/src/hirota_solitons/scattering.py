"""Direct-scattering verifier.

Samples a constructed potential at fixed time, integrates the associated
linear spectral problem across the sample window with classical fixed-step
RK4, and recovers scattering coefficients.  For a pure multi-soliton
potential the prescribed eigenvalues must reappear as zeros of the (1, 1)
transmission coefficient and the first-row/column reflection entries must
vanish on the real axis.

The boundary conditions at minus/plus infinity are imposed at -L/+L; the
default half-width makes the tail factor about e^-20.  Off the real axis the
full matrix system grows exponentially, so upper-half-plane evaluation uses
the self-contained first-column system (the first diagonal sign is -1, which
decouples column one from the rest).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import engine
from .errors import NonFiniteState, TailNotDecayed
from .spectral import SpectralConfig

#: Endpoint magnitude above which a trace is rejected.
TAIL_THRESHOLD = 1e-8

#: ODE state magnitude treated as blow-up.
BLOWUP_LIMIT = 1e300

DEFAULT_N_SAMPLES = 20001


def default_half_width(config: SpectralConfig) -> float:
    """L = 10 / min Im(lambda): truncation tail about e^-20."""
    if config.n_solitons == 0:
        return 10.0
    return 10.0 / min(p.lam.imag for p in config.points)


@dataclass(frozen=True)
class PotentialTrace:
    """Field samples on a uniform grid at one frozen time."""

    t: float
    x: np.ndarray   # (n_samples,)
    q: np.ndarray   # (n_samples, N) complex

    @property
    def n_fields(self) -> int:
        return self.q.shape[1]

    @property
    def step(self) -> float:
        return float(self.x[1] - self.x[0])


@dataclass(frozen=True)
class ScatteringMatrix:
    """Recovered scattering matrix at one real spectral value.

    det_deviation and unitarity_deviation record how far the result is from
    the exact identities det S = 1 and S^dagger S = I.
    """

    lam: complex
    s: np.ndarray
    det_deviation: float
    unitarity_deviation: float


def trace_potential(config: SpectralConfig, t: float, half_width: float,
                    n_samples: int = DEFAULT_N_SAMPLES) -> PotentialTrace:
    """Sample the reconstructed field over [-L, L] at fixed t."""
    if n_samples < 2001 or n_samples % 2 == 0:
        raise ValueError("n_samples must be an odd integer >= 2001")
    xs = np.linspace(-half_width, half_width, n_samples)
    q = np.empty((n_samples, config.n_fields), dtype=complex)
    for i, x in enumerate(xs):
        q[i] = engine.evaluate_field(config, float(x), t).q
    edge = max(float(np.linalg.norm(q[0])), float(np.linalg.norm(q[-1])))
    if edge > TAIL_THRESHOLD:
        raise TailNotDecayed(edge, default_half_width(config))
    return PotentialTrace(t=t, x=xs, q=q)


def _potential_matrices(trace: PotentialTrace) -> np.ndarray:
    """(n_samples, N+1, N+1) potential matrices for every sample."""
    n, nf = trace.q.shape
    Qs = np.zeros((n, nf + 1, nf + 1), dtype=complex)
    Qs[:, 0, 1:] = trace.q
    Qs[:, 1:, 0] = -trace.q.conj()
    return Qs


def integrate_jost(trace: PotentialTrace, lam: complex) -> np.ndarray:
    """Left Jost solution at the right edge: RK4 on eta' = i lam [S, eta] + Q eta.

    Starts from the identity at -L; the potential at RK4 half-steps is the
    linear interpolant (average) of adjacent samples.  Step size equals the
    sample spacing, so results are bit-reproducible.
    """
    nf = trace.n_fields
    sig = engine.signature(nf)
    D = sig[:, None] - sig[None, :]       # commutator acts entrywise
    cD = 1j * lam * D
    Qs = _potential_matrices(trace)
    Qmid = 0.5 * (Qs[:-1] + Qs[1:])
    h = trace.step
    eta = np.eye(nf + 1, dtype=complex)
    for i in range(len(trace.x) - 1):
        Q0, Qm, Q1 = Qs[i], Qmid[i], Qs[i + 1]
        k1 = cD * eta + Q0 @ eta
        e2 = eta + 0.5 * h * k1
        k2 = cD * e2 + Qm @ e2
        e3 = eta + 0.5 * h * k2
        k3 = cD * e3 + Qm @ e3
        e4 = eta + h * k3
        k4 = cD * e4 + Q1 @ e4
        eta = eta + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if i % 1000 == 0 and np.max(np.abs(eta)) > BLOWUP_LIMIT:
            raise NonFiniteState(f"Jost state exceeded {BLOWUP_LIMIT:g} at x = {trace.x[i]}")
    if not np.all(np.isfinite(eta)):
        raise NonFiniteState("non-finite Jost state at right edge")
    return eta


def integrate_jost_column1(trace: PotentialTrace, lam: complex) -> np.ndarray:
    """First Jost column at the right edge, stable for Im(lam) >= 0.

    The first column satisfies the closed system
    v' = i lam (S + I) v + Q v with S + I = diag(0, 2, .., 2); for
    Im(lam) > 0 the oscillatory factors decay going rightward, which is what
    makes this variant usable on the discrete spectrum.
    """
    if lam.imag < 0:
        raise ValueError("first-column integration requires Im(lambda) >= 0")
    nf = trace.n_fields
    d = 1j * lam * (engine.signature(nf) + 1.0)
    Qs = _potential_matrices(trace)
    Qmid = 0.5 * (Qs[:-1] + Qs[1:])
    h = trace.step
    v = np.zeros(nf + 1, dtype=complex)
    v[0] = 1.0
    for i in range(len(trace.x) - 1):
        Q0, Qm, Q1 = Qs[i], Qmid[i], Qs[i + 1]
        k1 = d * v + Q0 @ v
        v2 = v + 0.5 * h * k1
        k2 = d * v2 + Qm @ v2
        v3 = v + 0.5 * h * k2
        k3 = d * v3 + Qm @ v3
        v4 = v + h * k3
        k4 = d * v4 + Q1 @ v4
        v = v + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if i % 1000 == 0 and np.max(np.abs(v)) > BLOWUP_LIMIT:
            raise NonFiniteState(f"Jost column exceeded {BLOWUP_LIMIT:g} at x = {trace.x[i]}")
    if not np.all(np.isfinite(v)):
        raise NonFiniteState("non-finite Jost column at right edge")
    return v


def scattering_matrix(trace: PotentialTrace, lam: complex) -> ScatteringMatrix:
    """Full scattering matrix at real lam: S = E^-1 eta_-(L) E with E = e^{i lam S x}."""
    if abs(lam.imag) > 1e-12:
        raise ValueError("the full scattering matrix is recovered on the real axis only")
    lam = complex(lam.real, 0.0)
    eta = integrate_jost(trace, lam)
    sig = engine.signature(trace.n_fields)
    L = float(trace.x[-1])
    # (E^-1 eta E)[j, k] = exp(i lam (sig_k - sig_j) L) eta[j, k]
    phase = np.exp(1j * lam * (sig[None, :] - sig[:, None]) * L)
    s = phase * eta
    det_dev = abs(np.linalg.det(s) - 1.0)
    unit_dev = float(np.max(np.abs(s.conj().T @ s - np.eye(s.shape[0]))))
    return ScatteringMatrix(lam=lam, s=s, det_deviation=det_dev,
                            unitarity_deviation=unit_dev)


def transmission_coefficient(trace: PotentialTrace, lam: complex) -> complex:
    """The (1, 1) scattering coefficient, valid throughout Im(lam) >= 0.

    Equals the (1, 1) entry of the left Jost solution at the right edge (the
    oscillatory conjugation cancels on that entry); its upper-half-plane
    zeros are the discrete eigenvalues.
    """
    v = integrate_jost_column1(trace, lam)
    return complex(v[0])
